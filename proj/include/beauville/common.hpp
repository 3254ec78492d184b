#pragma once
// Shared basics: integer aliases, error types, a deterministic RNG, modular
// arithmetic and small-number factoring, and a chunked parallel-for.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace beauville {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i32 = std::int32_t;
using i64 = std::int64_t;

// Dense element index inside one realized group. Code 0 is the identity.
using Code = std::uint32_t;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Malformed input: files, grammars, parameters out of range. CLI exit 2.
struct InputError : Error {
  using Error::Error;
};
// A configured budget (element count, rewriting steps) was exceeded. CLI exit 3.
struct ResourceError : Error {
  using Error::Error;
};
// An internal invariant failed: bad oracle axioms, inconsistent tables.
struct IntegrityError : Error {
  using Error::Error;
};

template <class E = Error>
[[noreturn]] inline void fail(const std::string& msg) {
  throw E(msg);
}

// SplitMix64: the one seedable 64-bit generator used for every sampled or
// randomized computation. Identical seeds give identical streams on every
// platform, which keeps reports and witnesses reproducible.
struct SplitMix64 {
  u64 state;
  explicit SplitMix64(u64 seed) : state(seed) {}
  u64 next() {
    u64 z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform value in [0, n), n > 0, by rejection.
  u64 below(u64 n) {
    u64 lim = ~u64(0) - ~u64(0) % n;
    u64 v;
    do
      v = next();
    while (v >= lim);
    return v % n;
  }
};

inline u64 mod_pow(u64 base, u64 exp, u64 mod) {
  u64 r = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) r = (unsigned __int128)r * base % mod;
    base = (unsigned __int128)base * base % mod;
    exp >>= 1;
  }
  return r;
}

inline i64 egcd(i64 a, i64 b, i64& x, i64& y) {
  if (a == 0) {
    x = 0;
    y = 1;
    return b;
  }
  i64 x1, y1;
  i64 g = egcd(b % a, a, x1, y1);
  x = y1 - (b / a) * x1;
  y = x1;
  return g;
}

// Inverse of a modulo m, for gcd(a, m) = 1.
inline u64 mod_inv(u64 a, u64 m) {
  i64 x, y;
  i64 g = egcd(i64(a % m), i64(m), x, y);
  if (g != 1) fail<InputError>("mod_inv: not invertible");
  i64 r = x % i64(m);
  if (r < 0) r += i64(m);
  return u64(r);
}

inline u64 ipow(u64 b, unsigned e) {
  u64 r = 1;
  while (e--) r *= b;
  return r;
}

inline std::vector<std::pair<u64, int>> factorize(u64 n) {
  std::vector<std::pair<u64, int>> f;
  for (u64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d == 0) {
      int e = 0;
      while (n % d == 0) n /= d, ++e;
      f.push_back({d, e});
    }
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  auto f = factorize(n);
  return f.size() == 1 && f[0].second == 1;
}

// {p, k} when n = p^k with p prime and k >= 1; nullopt otherwise.
inline std::optional<std::pair<u64, int>> prime_power(u64 n) {
  if (n < 2) return std::nullopt;
  auto f = factorize(n);
  if (f.size() != 1) return std::nullopt;
  return std::make_pair(f[0].first, f[0].second);
}

inline unsigned worker_count() {
  if (const char* env = std::getenv("BEAUVILLE_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return unsigned(v);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

// Runs fn(begin, end, chunk_index) over a fixed partition of [0, n). The
// partition depends only on n and the worker count, so per-chunk results can
// be merged deterministically.
inline void parallel_chunks(u64 n,
                            const std::function<void(u64, u64, unsigned)>& fn) {
  unsigned workers = worker_count();
  if (n == 0) return;
  if (workers <= 1 || n < 1024) {
    fn(0, n, 0);
    return;
  }
  unsigned chunks = workers;
  std::vector<std::thread> ts;
  ts.reserve(chunks);
  u64 step = (n + chunks - 1) / chunks;
  for (unsigned c = 0; c < chunks; ++c) {
    u64 b = u64(c) * step, e = std::min(n, b + step);
    if (b >= e) break;
    ts.emplace_back([&fn, b, e, c] { fn(b, e, c); });
  }
  for (auto& t : ts) t.join();
}

}  // namespace beauville
