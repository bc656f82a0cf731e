#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace swarmcongest {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a, stable across platforms and runs.
inline std::uint64_t stable_hash(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Independent stream for one agent of one trial.
inline std::mt19937_64 agent_stream(std::uint64_t trial_seed, std::uint64_t slot_id) {
  return std::mt19937_64(splitmix64(trial_seed ^ splitmix64(slot_id + 1)));
}

}  // namespace swarmcongest
