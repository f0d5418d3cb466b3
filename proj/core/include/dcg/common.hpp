// Copyright 2026 The dcgroup Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DCG_COMMON_HPP_
#define DCG_COMMON_HPP_

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdint>
#include <functional>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace dcg {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed descriptors, rules, words, configs.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// A configured resource cap (ball size, exact-work budget) was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Exact rational arithmetic.
//
// Counts handled here are bounded by |ball|^2 with the default ball cap, so
// an int64 numerator/denominator with 128-bit intermediates is enough.
// Overflow throws instead of wrapping.
// ---------------------------------------------------------------------------

class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return from_wide(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    __int128 n = static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return from_wide(n, d);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(static_cast<__int128>(a.num_) * b.num_,
                     static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw Error("rational division by zero");
    return from_wide(static_cast<__int128>(a.num_) * b.den_,
                     static_cast<__int128>(a.den_) * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  static Rational from_wide(__int128 n, __int128 d) {
    if (d == 0) throw Error("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n;
    __int128 g = gcd128(a, d);
    if (g > 1) { n /= g; d /= g; }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) {
      throw Error("rational overflow");
    }
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a;
  }
  void normalize() {
    if (den_ == 0) throw Error("rational with zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Shortest round-trip decimal form of a double; keeps CSV output both exact
/// and byte-stable across runs.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

// ---------------------------------------------------------------------------
// Hashing and seeded RNG streams.
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  return splitmix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

/// Deterministic substream derivation: same (seed, stream) pair always yields
/// the same generator state, independent of thread scheduling.
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  return std::mt19937_64(splitmix64(hash_combine(splitmix64(seed), stream)));
}

/// Uniform double in [0,1) from the top 53 bits; avoids the
/// implementation-defined behavior of std::uniform_real_distribution.
inline double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// ---------------------------------------------------------------------------
// Deterministic chunked parallelism.
//
// Work is split into a fixed logical chunk grid, so results are combined in
// chunk order and the outcome does not depend on the number of worker
// threads.
// ---------------------------------------------------------------------------

inline int default_threads() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

constexpr std::size_t kLogicalChunks = 64;

struct ChunkRange {
  std::size_t begin;
  std::size_t end;
  std::size_t index;
};

inline std::vector<ChunkRange> make_chunks(std::size_t total, std::size_t n_chunks = kLogicalChunks) {
  std::vector<ChunkRange> out;
  if (total == 0) return out;
  n_chunks = std::min(n_chunks, total);
  std::size_t base = total / n_chunks, rem = total % n_chunks, pos = 0;
  for (std::size_t c = 0; c < n_chunks; ++c) {
    std::size_t len = base + (c < rem ? 1 : 0);
    out.push_back({pos, pos + len, c});
    pos += len;
  }
  return out;
}

/// Runs `fn(chunk)` over the logical chunk grid on up to `threads` workers and
/// returns per-chunk results in chunk order.
template <class T, class Fn>
std::vector<T> run_chunked(std::size_t total, int threads, Fn&& fn,
                           std::size_t n_chunks = kLogicalChunks) {
  auto chunks = make_chunks(total, n_chunks);
  std::vector<T> results(chunks.size());
  if (chunks.empty()) return results;
  int workers = std::max(1, std::min<int>(threads, static_cast<int>(chunks.size())));
  if (workers == 1) {
    for (const auto& c : chunks) results[c.index] = fn(c);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mu;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= chunks.size()) return;
        try {
          results[chunks[i].index] = fn(chunks[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

}  // namespace dcg

#endif  // DCG_COMMON_HPP_
