#pragma once

#include <cstdint>
#include <string_view>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>

namespace gff {

// Seed lineage. A master seed is split into named streams (one per suite and
// test) and each stream into per-replica generators, so any replica can be
// regenerated without touching the others and results do not depend on the
// order in which replicas are evaluated.

std::uint64_t splitmix64(std::uint64_t x);

/// Child seed of `parent` for an integer index.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index);
/// Child seed of `parent` for a label.
std::uint64_t derive_seed(std::uint64_t parent, std::string_view label);

/// Generator for one replica (or one walk) of a stream.
class ReplicaRng {
 public:
  ReplicaRng(std::uint64_t stream_seed, std::uint64_t replica);

  double normal() { return normal_(engine_); }
  /// Uniform on [0, 1).
  double uniform() { return uniform_(engine_); }

 private:
  boost::random::mt19937_64 engine_;
  boost::random::normal_distribution<double> normal_;
  boost::random::uniform_01<double> uniform_;
};

}  // namespace gff
