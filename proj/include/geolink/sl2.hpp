#pragma once

// Positive words in L = (1 0; 1 1) and R = (1 1; 0 1), and conjugacy classes
// of hyperbolic elements of SL(2,Z).

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "geolink/error.hpp"
#include "geolink/rational.hpp"

namespace geolink {

/// A word over {L, R}; cyclic identity is taken only where stated.
class LRWord {
 public:
  LRWord() = default;
  explicit LRWord(std::string letters) : letters_(std::move(letters)) {
    for (char c : letters_) {
      if (c != 'L' && c != 'R') {
        throw Error(ErrorKind::invalid_word, "LR word '" + letters_ + "' has letters outside {L,R}");
      }
    }
  }

  const std::string& str() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  bool has_both_letters() const {
    return letters_.find('L') != std::string::npos && letters_.find('R') != std::string::npos;
  }

  friend bool operator==(const LRWord&, const LRWord&) = default;
  friend auto operator<=>(const LRWord& x, const LRWord& y) { return x.letters_ <=> y.letters_; }

 private:
  std::string letters_;
};

/// Expands exponent notation such as "LR2LR2" or "L^2R".
inline LRWord parse_lr_word(const std::string& text) {
  std::string out;
  for (std::size_t i = 0; i < text.size();) {
    const char c = text[i++];
    if (c != 'L' && c != 'R') {
      throw Error(ErrorKind::invalid_word, "LR word '" + text + "' has letters outside {L,R}");
    }
    if (i < text.size() && text[i] == '^') ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
    int exponent = 1;
    if (j > i) {
      if (j - i > 6) throw Error(ErrorKind::out_of_range, "exponent too large in '" + text + "'");
      exponent = std::stoi(text.substr(i, j - i));
    } else if (i > 0 && text[i - 1] == '^') {
      throw Error(ErrorKind::invalid_word, "missing exponent in '" + text + "'");
    }
    out.append(static_cast<std::size_t>(exponent), c);
    i = j;
  }
  if (out.empty()) throw Error(ErrorKind::invalid_word, "empty LR word");
  return LRWord(out);
}

inline LRWord cyclic_canonical(const LRWord& w) {
  if (w.empty()) return w;
  std::string best = w.str();
  for (std::size_t k = 1; k < w.size(); ++k) {
    std::string r = w.str().substr(k) + w.str().substr(0, k);
    if (r < best) best = std::move(r);
  }
  return LRWord(best);
}

inline bool cyclically_equal(const LRWord& x, const LRWord& y) {
  return x.size() == y.size() && cyclic_canonical(x) == cyclic_canonical(y);
}

struct IntMatrix2 {
  std::int64_t m11 = 1, m12 = 0, m21 = 0, m22 = 1;

  std::int64_t det() const { return checked_sub(checked_mul(m11, m22), checked_mul(m12, m21)); }
  std::int64_t trace() const { return checked_add(m11, m22); }

  friend IntMatrix2 operator*(const IntMatrix2& x, const IntMatrix2& y) {
    return {checked_add(checked_mul(x.m11, y.m11), checked_mul(x.m12, y.m21)),
            checked_add(checked_mul(x.m11, y.m12), checked_mul(x.m12, y.m22)),
            checked_add(checked_mul(x.m21, y.m11), checked_mul(x.m22, y.m21)),
            checked_add(checked_mul(x.m21, y.m12), checked_mul(x.m22, y.m22))};
  }
  friend bool operator==(const IntMatrix2&, const IntMatrix2&) = default;

  static std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
    std::int64_t out;
    if (__builtin_mul_overflow(x, y, &out)) throw Error(ErrorKind::out_of_range, "matrix overflow");
    return out;
  }
  static std::int64_t checked_add(std::int64_t x, std::int64_t y) {
    std::int64_t out;
    if (__builtin_add_overflow(x, y, &out)) throw Error(ErrorKind::out_of_range, "matrix overflow");
    return out;
  }
  static std::int64_t checked_sub(std::int64_t x, std::int64_t y) {
    std::int64_t out;
    if (__builtin_sub_overflow(x, y, &out)) throw Error(ErrorKind::out_of_range, "matrix overflow");
    return out;
  }
};

inline constexpr IntMatrix2 kL{1, 0, 1, 1};
inline constexpr IntMatrix2 kR{1, 1, 0, 1};

inline IntMatrix2 word_to_matrix(const LRWord& w) {
  IntMatrix2 out;
  for (char c : w.str()) out = out * (c == 'L' ? kL : kR);
  return out;
}

inline std::int64_t trace(const LRWord& w) { return word_to_matrix(w).trace(); }

/// Canonical cyclic positive words with both letters, length <= max_len and
/// the given trace. Powers of a single letter are parabolic and excluded.
inline std::vector<LRWord> classes_with_trace(std::int64_t t, std::size_t max_len) {
  std::set<LRWord> found;
  std::string word;
  // Entries never decrease along a positive word, so a prefix whose trace
  // already exceeds t can be cut.
  auto dfs = [&](auto&& self, const IntMatrix2& m) -> void {
    if (!word.empty() && m.trace() == t) {
      LRWord w(word);
      if (w.has_both_letters()) found.insert(cyclic_canonical(w));
    }
    if (word.size() == max_len) return;
    for (char c : {'L', 'R'}) {
      const IntMatrix2 next = m * (c == 'L' ? kL : kR);
      if (next.trace() > t) continue;
      word.push_back(c);
      self(self, next);
      word.pop_back();
    }
  };
  if (t >= 3) dfs(dfs, IntMatrix2{});
  return {found.begin(), found.end()};
}

namespace detail {

inline BigInt isqrt(const BigInt& n) { return boost::multiprecision::sqrt(n); }

inline BigInt floor_div(const BigInt& x, const BigInt& y) {
  BigInt q = x / y;
  if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
  return q;
}

inline LRWord repeat(const LRWord& w, std::size_t k) {
  std::string out;
  for (std::size_t i = 0; i < k; ++i) out += w.str();
  return LRWord(out);
}

}  // namespace detail

/// Positive word conjugate to M, read off the periodic continued fraction
/// of the attracting fixed point of z -> (m11 z + m12) / (m21 z + m22).
inline LRWord matrix_to_lr_word(const IntMatrix2& M) {
  if (M.det() != 1) throw Error(ErrorKind::invalid_matrix, "determinant is not 1");
  const std::int64_t t = M.trace();
  if (t < 3) {
    throw Error(ErrorKind::not_hyperbolic,
                "trace " + std::to_string(t) + " < 3 is not conjugate to a positive word");
  }
  // alpha = (P + sqrt(D)) / Q with Q | D - P^2
  const BigInt D = BigInt(t) * t - 4;
  const BigInt s = detail::isqrt(D);
  BigInt P = BigInt(M.m11) - M.m22;
  BigInt Q = BigInt(2) * M.m21;

  std::map<std::pair<BigInt, BigInt>, std::size_t> seen;
  std::vector<BigInt> quotients;
  std::size_t cycle_start = 0;
  while (true) {
    auto [it, inserted] = seen.emplace(std::make_pair(P, Q), quotients.size());
    if (!inserted) {
      cycle_start = it->second;
      break;
    }
    // floor((P + sqrt D) / Q); sqrt D is irrational for t >= 3
    const BigInt a = Q > 0 ? detail::floor_div(P + s, Q) : detail::floor_div(-P - s - 1, -Q);
    quotients.push_back(a);
    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
  std::vector<BigInt> period(quotients.begin() + static_cast<std::ptrdiff_t>(cycle_start),
                             quotients.end());
  // Each tail step is a determinant -1 change of variable; start on an even
  // step so the conjugation stays in SL(2,Z).
  if (cycle_start % 2 == 1) std::rotate(period.begin(), period.begin() + 1, period.end());
  if (period.size() % 2 == 1) {
    const auto copy = period;
    period.insert(period.end(), copy.begin(), copy.end());
  }
  std::string letters;
  for (std::size_t i = 0; i < period.size(); ++i) {
    if (period[i] <= 0 || period[i] > 1'000'000) {
      throw Error(ErrorKind::out_of_range, "continued fraction quotient out of range");
    }
    letters.append(static_cast<std::size_t>(period[i]), i % 2 == 0 ? 'R' : 'L');
  }
  const LRWord root(letters);
  // M is a positive power of the primitive class read from the period.
  for (std::size_t k = 1;; ++k) {
    const std::int64_t tk = trace(detail::repeat(root, k));
    if (tk == t) return cyclic_canonical(detail::repeat(root, k));
    if (tk > t) {
      throw Error(ErrorKind::model_inconsistency, "no power of " + root.str() + " has trace " +
                                                      std::to_string(t));
    }
  }
}

enum class AppendixFamily {
  genus_a,             // Sigma_g, g >= 2, 4g+4 components
  genus_b,             // Sigma_g, g >= 2, 4g+2 components
  genus_c,             // Sigma_g, g >= 2, 4g components
  sphere_2_3_r,        // Sigma_{0;2,3,r}, r >= 7
  sphere_2_q_r,        // Sigma_{0;2,q,r}, q >= 4, r >= 5
  sphere_p_q_r,        // Sigma_{0;p,q,r}, p,q >= 3, r >= 4, one component
  sphere_p_q_r_two,    // same surfaces, two components
  sphere_p_q_r_s,      // Sigma_{0;p,q,r,s}, p,q,r >= 2, s >= 3
  sphere_all_ge4,      // Sigma_{0;p_1..p_n}, p_i >= 4
  sphere_even,         // Sigma_{0;p_1..p_2n}
  genus_with_cones,    // Sigma_{g;p_1..p_n}, g >= 1
};

struct AppendixRow {
  long long boundary_count = 0;
  std::optional<LRWord> word;  // absent where the table has no first-return word
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::out_of_range, "appendix parameters: " + what);
}

inline std::string power(char c, long long k) {
  require(k >= 0 && k <= 100000, "exponent out of range");
  return std::string(static_cast<std::size_t>(k), c);
}

}  // namespace detail

/// Boundary count and first-return class of a table row. For the cone
/// families, params are the cone orders; for genus_with_cones, params[0] is
/// the genus followed by the cone orders.
inline AppendixRow appendix_table(AppendixFamily family, const std::vector<long long>& params) {
  using detail::power;
  using detail::require;
  auto n_params = [&](std::size_t n) {
    require(params.size() == n, "expected " + std::to_string(n) + " parameters");
  };
  switch (family) {
    case AppendixFamily::genus_a:
    case AppendixFamily::genus_b:
    case AppendixFamily::genus_c: {
      n_params(1);
      const long long g = params[0];
      require(g >= 2, "genus must be >= 2");
      const int r1 = family == AppendixFamily::genus_a ? 2 : 4;
      const int r2 = family == AppendixFamily::genus_c ? 4 : 2;
      const long long b = family == AppendixFamily::genus_a   ? 4 * g + 4
                          : family == AppendixFamily::genus_b ? 4 * g + 2
                                                              : 4 * g;
      return {b, LRWord(power('L', g - 1) + power('R', r1) + power('L', g - 1) + power('R', r2))};
    }
    case AppendixFamily::sphere_2_3_r: {
      n_params(3);
      require(params[0] == 2 && params[1] == 3 && params[2] >= 7, "needs (2,3,r), r >= 7");
      return {1, LRWord(power('L', params[2] - 6) + "R")};
    }
    case AppendixFamily::sphere_2_q_r: {
      n_params(3);
      require(params[0] == 2 && params[1] >= 4 && params[2] >= 5, "needs (2,q,r), q >= 4, r >= 5");
      return {1, LRWord(power('L', params[1] - 4) + "R" + power('L', params[2] - 4) + "R")};
    }
    case AppendixFamily::sphere_p_q_r: {
      n_params(3);
      require(params[0] >= 3 && params[1] >= 3 && params[2] >= 4, "needs p,q >= 3, r >= 4");
      return {1, LRWord(power('L', params[0] - 3) + "R" + power('L', params[1] - 3) + "R" +
                        power('L', params[2] - 3) + "R")};
    }
    case AppendixFamily::sphere_p_q_r_two: {
      n_params(3);
      require(params[0] >= 3 && params[1] >= 3 && params[2] >= 4, "needs p,q >= 3, r >= 4");
      return {2, LRWord(power('L', params[0] + params[1] - 6) + "R" + power('L', params[2] - 3) +
                        "R")};
    }
    case AppendixFamily::sphere_p_q_r_s: {
      n_params(4);
      require(params[0] >= 2 && params[1] >= 2 && params[2] >= 2 && params[3] >= 3,
              "needs p,q,r >= 2, s >= 3");
      std::string w;
      for (long long p : params) w += power('L', p - 2) + "R";
      return {2, LRWord(w)};
    }
    case AppendixFamily::sphere_all_ge4: {
      require(!params.empty(), "needs at least one cone order");
      for (long long p : params) require(p >= 4, "cone orders must be >= 4");
      return {static_cast<long long>(params.size()), std::nullopt};
    }
    case AppendixFamily::sphere_even: {
      require(!params.empty() && params.size() % 2 == 0, "needs an even number of cone orders");
      for (long long p : params) require(p >= 2, "cone orders must be >= 2");
      return {static_cast<long long>(params.size()) - 2, std::nullopt};
    }
    case AppendixFamily::genus_with_cones: {
      require(!params.empty() && params[0] >= 1, "genus must be >= 1");
      for (std::size_t i = 1; i < params.size(); ++i) require(params[i] >= 2, "cone orders must be >= 2");
      const long long g = params[0];
      const long long n = static_cast<long long>(params.size()) - 1;
      return {4 * g + n + 3, std::nullopt};
    }
  }
  throw Error(ErrorKind::out_of_range, "unknown appendix family");
}

inline std::optional<AppendixFamily> parse_appendix_family(const std::string& name) {
  static const std::map<std::string, AppendixFamily> names = {
      {"genus-a", AppendixFamily::genus_a},
      {"genus-b", AppendixFamily::genus_b},
      {"genus-c", AppendixFamily::genus_c},
      {"sphere-2-3-r", AppendixFamily::sphere_2_3_r},
      {"sphere-2-q-r", AppendixFamily::sphere_2_q_r},
      {"sphere-p-q-r", AppendixFamily::sphere_p_q_r},
      {"sphere-p-q-r-two", AppendixFamily::sphere_p_q_r_two},
      {"sphere-p-q-r-s", AppendixFamily::sphere_p_q_r_s},
      {"sphere-all-ge4", AppendixFamily::sphere_all_ge4},
      {"sphere-even", AppendixFamily::sphere_even},
      {"genus-with-cones", AppendixFamily::genus_with_cones},
  };
  auto it = names.find(name);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

}  // namespace geolink
