#include "rmlab/random_stream.hpp"

namespace rmlab {

namespace {

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a
std::uint64_t hash_label(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RandomStream::RandomStream(std::uint64_t key) : key_(key) {
  std::uint64_t s = key;
  for (auto& word : state_) {
    s = mix64(s);
    word = s;
  }
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

RandomStream RandomStream::for_trial(std::uint64_t master_seed, std::string_view experiment_id,
                                     std::uint64_t trial_index) {
  std::uint64_t h = mix64(master_seed);
  h = mix64(h ^ hash_label(experiment_id));
  h = mix64(h ^ mix64(trial_index));
  return RandomStream(h);
}

RandomStream RandomStream::substream(std::uint64_t index) const {
  return RandomStream(mix64(key_ ^ mix64(index ^ 0x5851f42d4c957f2dULL)));
}

// xoshiro256**
RandomStream::result_type RandomStream::operator()() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RandomStream::uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double RandomStream::gaussian() { return normal_(*this); }

}  // namespace rmlab
