#pragma once

// Cyclic binary words coding periodic orbits of the two-eared templates for
// the (2,3,7) and (3,3,4) orbisurfaces.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "geolink/error.hpp"

namespace geolink {

/// One period of a bi-infinite periodic word over {a, b}.
class CyclicWord {
 public:
  explicit CyclicWord(std::string letters) : letters_(std::move(letters)) {
    if (letters_.empty()) throw Error(ErrorKind::invalid_word, "empty word");
    for (char c : letters_) {
      if (c != 'a' && c != 'b') {
        throw Error(ErrorKind::invalid_word,
                    "word '" + letters_ + "' has letters outside {a,b}");
      }
    }
  }

  const std::string& str() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  char operator[](std::size_t i) const { return letters_[i % letters_.size()]; }

  /// Rotation starting at index k.
  CyclicWord rotated(std::size_t k) const {
    k %= letters_.size();
    return CyclicWord(letters_.substr(k) + letters_.substr(0, k), Unchecked{});
  }

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
  friend auto operator<=>(const CyclicWord& x, const CyclicWord& y) {
    return x.letters_ <=> y.letters_;
  }

 private:
  struct Unchecked {};
  CyclicWord(std::string letters, Unchecked) : letters_(std::move(letters)) {}

  std::string letters_;
};

inline CyclicWord canonicalize(const CyclicWord& w) {
  CyclicWord best = w;
  for (std::size_t k = 1; k < w.size(); ++k) {
    CyclicWord r = w.rotated(k);
    if (r < best) best = std::move(r);
  }
  return best;
}

inline bool same_orbit_code(const CyclicWord& u, const CyclicWord& v) {
  return u.size() == v.size() && canonicalize(u) == canonicalize(v);
}

/// True when w is not a proper power of a shorter word.
inline bool is_primitive(const CyclicWord& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = w[i] == w[i - d];
    if (periodic) return false;
  }
  return true;
}

struct LetterCounts {
  int n_a = 0;
  int n_b = 0;
  friend bool operator==(const LetterCounts&, const LetterCounts&) = default;
};

inline LetterCounts letter_counts(const CyclicWord& w) {
  const auto n_a = static_cast<int>(std::count(w.str().begin(), w.str().end(), 'a'));
  return {n_a, static_cast<int>(w.size()) - n_a};
}

/// Cone orders p <= q <= r of a hyperbolic triangle orbisurface.
class SurfaceSpec {
 public:
  SurfaceSpec(int p, int q, int r) {
    int v[3] = {p, q, r};
    std::sort(v, v + 3);
    p_ = v[0];
    q_ = v[1];
    r_ = v[2];
    if (p_ < 2) throw Error(ErrorKind::invalid_surface, "cone orders must be >= 2");
    // 1/p + 1/q + 1/r < 1  <=>  pq + qr + pr < pqr
    if (euler_denominator() <= 0) {
      throw Error(ErrorKind::invalid_surface,
                  "triple (" + std::to_string(p_) + "," + std::to_string(q_) + "," +
                      std::to_string(r_) + ") is not hyperbolic");
    }
  }

  int p() const { return p_; }
  int q() const { return q_; }
  int r() const { return r_; }

  /// pqr - pq - qr - pr, the order of the first homology of the unit tangent bundle.
  long long euler_denominator() const {
    const long long p = p_, q = q_, r = r_;
    return p * q * r - p * q - q * r - p * r;
  }

  bool is_237() const { return p_ == 2 && q_ == 3 && r_ == 7; }
  bool is_334() const { return p_ == 3 && q_ == 3 && r_ == 4; }
  /// Only these two templates have encoded admissibility rules.
  bool has_coding() const { return is_237() || is_334(); }

  void require_coding() const {
    if (!has_coding()) {
      throw Error(ErrorKind::unsupported_surface,
                  "no template coding for surface " + str() + " (only 2,3,7 and 3,3,4)");
    }
  }

  std::string str() const {
    return std::to_string(p_) + "," + std::to_string(q_) + "," + std::to_string(r_);
  }

  friend bool operator==(const SurfaceSpec&, const SurfaceSpec&) = default;

 private:
  int p_ = 2, q_ = 3, r_ = 7;
};

namespace detail {

// Factors of length <= 2|w| are detected on three copies of the period.
inline bool has_cyclic_factor(std::string_view period, std::string_view factor) {
  std::string tripled;
  tripled.reserve(3 * period.size());
  for (int i = 0; i < 3; ++i) tripled += period;
  return tripled.find(factor) != std::string::npos;
}

// Rotation of w beginning at an 'a' that follows a 'b'. Requires both letters.
inline CyclicWord rotate_to_run_start(const CyclicWord& w) {
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] == 'a' && w[k + w.size() - 1] == 'b') return w.rotated(k);
  }
  return w;
}

// Rewrites a word free of "aa" and "bbb" over x = ab, y = abb.
inline std::string to_xy(const CyclicWord& w) {
  const CyclicWord r = rotate_to_run_start(w);
  const std::string& s = r.str();
  std::string out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (i + 2 < s.size() && s[i + 2] == 'b') {
      out += 'y';
      i += 3;
    } else {
      out += 'x';
      i += 2;
    }
  }
  return out;
}

}  // namespace detail

inline bool is_admissible(const CyclicWord& w, const SurfaceSpec& s) {
  s.require_coding();
  const std::string& letters = w.str();
  const auto counts = letter_counts(w);
  if (counts.n_a == 0 || counts.n_b == 0) return false;
  if (s.is_237()) {
    if (detail::has_cyclic_factor(letters, "aa") || detail::has_cyclic_factor(letters, "bbb")) {
      return false;
    }
    const std::string xy = detail::to_xy(w);
    return !detail::has_cyclic_factor(xy, "xxx") && !detail::has_cyclic_factor(xy, "yyy");
  }
  for (std::string_view f : {"aaa", "bbb", "abbabb", "aabaab"}) {
    if (detail::has_cyclic_factor(letters, f)) return false;
  }
  return true;
}

inline void require_admissible(const CyclicWord& w, const SurfaceSpec& s) {
  if (!is_admissible(w, s)) {
    throw Error(ErrorKind::inadmissible_word,
                "word '" + w.str() + "' is not admissible for surface " + s.str());
  }
}

/// Canonical code of the orbit a word represents. The only coincidences
/// encoded are the alternate codes of the two shortest geodesics.
inline CyclicWord orbit_identity(const CyclicWord& w, const SurfaceSpec& s) {
  CyclicWord c = canonicalize(w);
  if (s.is_237() && (c.str() == "abababb" || c.str() == "ababbabb")) return CyclicWord("ababb");
  if (s.is_334() && (c.str() == "aabab" || c.str() == "ababb")) return CyclicWord("ab");
  return c;
}

struct EnumeratedOrbit {
  CyclicWord word;      // canonical code
  CyclicWord identity;  // orbit_identity(word)
};

/// Lyndon words over {a,b} of length <= max_len (Duval's generation), i.e.
/// canonical primitive necklaces in lexicographic order.
template <class Visit>
void for_each_lyndon_word(std::size_t max_len, Visit&& visit) {
  if (max_len == 0) return;
  std::string w = "a";
  while (!w.empty()) {
    visit(std::as_const(w));
    const std::size_t m = w.size();
    while (w.size() < max_len) w += w[w.size() - m];
    while (!w.empty() && w.back() == 'b') w.pop_back();
    if (!w.empty()) w.back() = 'b';
  }
}

inline std::vector<std::string> lyndon_words(std::size_t max_len) {
  std::vector<std::string> out;
  for_each_lyndon_word(max_len, [&](const std::string& w) { out.push_back(w); });
  return out;
}

/// All canonical primitive admissible codes up to max_len, ordered by
/// (length, lexicographic).
inline std::vector<EnumeratedOrbit> enumerate_orbits(const SurfaceSpec& s, std::size_t max_len) {
  s.require_coding();
  if (max_len == 0) throw Error(ErrorKind::out_of_range, "max_len must be >= 1");
  std::vector<EnumeratedOrbit> out;
  for_each_lyndon_word(max_len, [&](const std::string& letters) {
    CyclicWord w(letters);
    if (is_admissible(w, s)) out.push_back({w, orbit_identity(w, s)});
  });
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.word.size() != y.word.size()) return x.word.size() < y.word.size();
    return x.word < y.word;
  });
  return out;
}

/// x^i y^j for (2,3,7) with x = ab, y = abb; a^i b^j for (3,3,4).
struct Block {
  int i = 1;
  int j = 1;
  friend bool operator==(const Block&, const Block&) = default;
  friend auto operator<=>(const Block&, const Block&) = default;
};

inline std::string block_letters(const Block& b, const SurfaceSpec& s) {
  s.require_coding();
  std::string out;
  if (s.is_237()) {
    for (int k = 0; k < b.i; ++k) out += "ab";
    for (int k = 0; k < b.j; ++k) out += "abb";
  } else {
    out.append(static_cast<std::size_t>(b.i), 'a');
    out.append(static_cast<std::size_t>(b.j), 'b');
  }
  return out;
}

inline std::string block_name(const Block& b, const SurfaceSpec& s) {
  const char first = s.is_237() ? 'x' : 'a';
  const char second = s.is_237() ? 'y' : 'b';
  std::string out(1, first);
  if (b.i > 1) out += std::to_string(b.i);
  out += second;
  if (b.j > 1) out += std::to_string(b.j);
  return out;
}

/// Cuts w after each maximal run of the second block letter. The block list
/// is rotated so that its concatenation is least among its rotations.
inline std::vector<Block> block_decomposition(const CyclicWord& w, const SurfaceSpec& s) {
  require_admissible(w, s);
  std::string symbols;
  char first = 'a';
  if (s.is_237()) {
    symbols = detail::to_xy(w);
    first = 'x';
  } else {
    symbols = detail::rotate_to_run_start(w).str();
  }
  // rotate so a run of `first` starts at index 0
  const std::size_t n = symbols.size();
  std::size_t start = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (symbols[k] == first && symbols[(k + n - 1) % n] != first) {
      start = k;
      break;
    }
  }
  std::rotate(symbols.begin(), symbols.begin() + static_cast<std::ptrdiff_t>(start), symbols.end());

  std::vector<Block> blocks;
  std::size_t k = 0;
  while (k < n) {
    Block b{0, 0};
    while (k < n && symbols[k] == first) ++b.i, ++k;
    while (k < n && symbols[k] != first) ++b.j, ++k;
    blocks.push_back(b);
  }

  std::vector<Block> best = blocks;
  std::string best_letters;
  for (const auto& b : best) best_letters += block_letters(b, s);
  for (std::size_t r = 1; r < blocks.size(); ++r) {
    std::rotate(blocks.begin(), blocks.begin() + 1, blocks.end());
    std::string letters;
    for (const auto& b : blocks) letters += block_letters(b, s);
    if (letters < best_letters) {
      best = blocks;
      best_letters = std::move(letters);
    }
  }
  return best;
}

}  // namespace geolink
