#pragma once

#include <cstdint>
#include <random>

namespace specshift {

// splitmix64 step; used to derive independent per-task seeds so results do
// not depend on how work is scheduled.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t task_seed(std::uint64_t root_seed, std::uint64_t task_id) {
  std::uint64_t s = root_seed ^ (0xd1b54a32d192ed03ULL * (task_id + 1));
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  return a ^ (b << 1);
}

inline std::mt19937_64 make_engine(std::uint64_t root_seed, std::uint64_t task_id = 0) {
  return std::mt19937_64(task_seed(root_seed, task_id));
}

}  // namespace specshift
