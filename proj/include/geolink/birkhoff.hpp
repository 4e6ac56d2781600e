#pragma once

// Certification of negative linking with a base orbit over a finite prefix
// of the orbit list, and the invariants of the resulting Birkhoff section.

#include <algorithm>
#include <chrono>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "geolink/error.hpp"
#include "geolink/rational.hpp"
#include "geolink/sl2.hpp"
#include "geolink/surgery.hpp"
#include "geolink/template_model.hpp"
#include "geolink/words.hpp"

namespace geolink {

enum class BaseRole { h, gamma8 };

inline std::string_view to_string(BaseRole r) { return r == BaseRole::h ? "h" : "gamma8"; }

struct BaseOrbit {
  SurfaceSpec surface;
  CyclicWord word;
  BaseRole role;

  static BaseOrbit h() { return {SurfaceSpec(2, 3, 7), CyclicWord("ababb"), BaseRole::h}; }
  static BaseOrbit gamma8() { return {SurfaceSpec(3, 3, 4), CyclicWord("ab"), BaseRole::gamma8}; }

  static BaseOrbit for_surface(const SurfaceSpec& s) {
    s.require_coding();
    return s.is_237() ? h() : gamma8();
  }

  /// "h", "gamma8", or a word; a word must be a code of the designated
  /// shortest geodesic of the surface.
  static BaseOrbit parse(const std::string& name, const SurfaceSpec& s) {
    const BaseOrbit designated = for_surface(s);
    if (name == "h" || name == "gamma8") {
      if (name != to_string(designated.role)) {
        throw Error(ErrorKind::invalid_surface,
                    "base '" + name + "' does not belong to surface " + s.str());
      }
      return designated;
    }
    const CyclicWord w(name);
    require_admissible(w, s);
    if (canonicalize(w) != designated.word) {
      throw Error(ErrorKind::out_of_range, "base word '" + name + "' is not the code " +
                                               designated.word.str() + " of the base geodesic");
    }
    return designated;
  }
};

/// Per-block linking with the base, plus a correction for each cyclic
/// transition first -> second in the subsequence of blocks other than the
/// base block (1,1). A (2,2) block between them breaks the transition.
struct FastTable {
  SurfaceSpec surface;
  std::map<Block, Rational> block_values;
  Block first{2, 1};
  Block second{1, 2};
  Rational alternation;
};

namespace detail {

inline CyclicWord blocks_word(const std::vector<Block>& blocks, const SurfaceSpec& s) {
  std::string letters;
  for (const auto& b : blocks) letters += block_letters(b, s);
  return CyclicWord(letters);
}

inline Rational template_base_value(const BaseOrbit& base, const CyclicWord& w,
                                    const TemplateModel& m) {
  if (canonicalize(w) == base.word) return template_surgered_self_linking(base.surface, w, m);
  return template_surgered_linking(base.surface, base.word, w, m);
}

}  // namespace detail

inline FastTable derive_fast_table(const BaseOrbit& base, const TemplateModel& m) {
  FastTable t{base.surface, {}, {2, 1}, {1, 2}, Rational()};
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      const Block b{i, j};
      t.block_values[b] =
          detail::template_base_value(base, detail::blocks_word({b}, base.surface), m);
    }
  }
  const CyclicWord mixed = detail::blocks_word({t.first, t.second}, base.surface);
  t.alternation = detail::template_base_value(base, mixed, m) - t.block_values[t.first] -
                  t.block_values[t.second];
  return t;
}

inline Rational fast_value(const FastTable& t, const std::vector<Block>& blocks) {
  Rational sum;
  std::vector<Block> mixed;
  for (const auto& b : blocks) {
    sum += t.block_values.at(b);
    if (b != Block{1, 1}) mixed.push_back(b);
  }
  if (t.alternation.sign() != 0 && mixed.size() >= 2) {
    long long transitions = 0;
    for (std::size_t k = 0; k < mixed.size(); ++k) {
      if (mixed[k] == t.first && mixed[(k + 1) % mixed.size()] == t.second) ++transitions;
    }
    sum += t.alternation * Rational(transitions);
  }
  return sum;
}

/// Linking of the base with w through the block table. Codes of the base
/// geodesic give the self-linking.
inline Rational base_linking(const BaseOrbit& base, const CyclicWord& w, const FastTable& t) {
  return fast_value(t, block_decomposition(w, base.surface));
}

/// Linking of the base with w through the template and the surgery formula.
inline Rational oracle_linking(const BaseOrbit& base, const CyclicWord& w, const TemplateModel& m) {
  if (same_orbit_code(w, base.word)) return surgered_self_linking(base.surface, w, m);
  return surgered_linking(base.surface, base.word, w, m);
}

enum class Mode { fast, oracle };

inline std::string_view to_string(Mode m) { return m == Mode::fast ? "fast" : "oracle"; }

struct OrbitValue {
  CyclicWord word;
  CyclicWord identity;
  Rational linking;
};

struct CertificationReport {
  SurfaceSpec surface;
  BaseOrbit base;
  std::size_t max_len = 0;
  Mode mode = Mode::fast;
  Rational self_linking{};
  bool all_negative = false;
  Rational min_value{};
  CyclicWord min_witness{"a"};
  // Largest value over orbits other than the base geodesic.
  std::optional<Rational> max_non_base{};
  std::optional<CyclicWord> max_non_base_witness{};
  // Codes whose intersection number m * (-linking) with the section is 1.
  std::vector<CyclicWord> unit_intersection_orbits{};
  std::vector<OrbitValue> orbits{};
  std::chrono::duration<double> elapsed{0};

  BigInt multiplicity() const { return self_linking.den(); }
};

inline CertificationReport certify(const BaseOrbit& base, std::size_t max_len, Mode mode,
                                   const TemplateModel& model) {
  const auto start = std::chrono::steady_clock::now();
  if (max_len < base.word.size()) {
    throw Error(ErrorKind::out_of_range, "max_len " + std::to_string(max_len) +
                                             " is shorter than the base word");
  }
  const auto listed = enumerate_orbits(base.surface, max_len);
  const FastTable table = derive_fast_table(base, model);

  CertificationReport r{.surface = base.surface, .base = base, .max_len = max_len, .mode = mode};
  r.self_linking = surgered_self_linking(base.surface, base.word, model);
  r.orbits.resize(listed.size(), OrbitValue{base.word, base.word, Rational()});

  auto evaluate = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const auto& o = listed[k];
      Rational v = mode == Mode::fast ? base_linking(base, o.word, table)
                                      : oracle_linking(base, o.word, model);
      r.orbits[k] = {o.word, o.identity, std::move(v)};
    }
  };
  const std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  const std::size_t chunk = (listed.size() + workers - 1) / workers;
  std::vector<std::future<void>> jobs;
  for (std::size_t b = 0; b < listed.size(); b += chunk) {
    jobs.push_back(std::async(std::launch::async, evaluate, b, std::min(listed.size(), b + chunk)));
  }
  for (auto& j : jobs) j.get();

  // Orbits are in enumeration order, so the first extremum found is the
  // (length, lexicographic) least witness.
  r.all_negative = r.self_linking.sign() < 0;
  r.min_value = r.self_linking;
  r.min_witness = base.word;
  const BigInt m = r.multiplicity();
  for (const auto& o : r.orbits) {
    if (o.linking.sign() >= 0) r.all_negative = false;
    if (o.linking < r.min_value) {
      r.min_value = o.linking;
      r.min_witness = o.word;
    }
    if (o.identity != base.word && (!r.max_non_base || o.linking > *r.max_non_base)) {
      r.max_non_base = o.linking;
      r.max_non_base_witness = o.word;
    }
    if (o.linking * Rational(-m) == Rational(1)) r.unit_intersection_orbits.push_back(o.word);
  }
  r.elapsed = std::chrono::steady_clock::now() - start;
  return r;
}

struct SectionData {
  BigInt multiplicity;
  BigInt chi;
  int boundary_components = 1;
  BigInt genus;
  int fixed_points = 0;
  std::int64_t trace = 0;
  LRWord monodromy;
};

/// Section invariants from the self-linking of the boundary orbit and the
/// number of fixed points of the first-return map.
inline SectionData section_from_values(const Rational& self_linking, int fixed_points,
                                       int boundary_components) {
  if (boundary_components < 1) throw Error(ErrorKind::out_of_range, "boundary components must be >= 1");
  SectionData d;
  d.multiplicity = self_linking.den();
  const Rational chi = Rational(d.multiplicity) * self_linking;
  if (!chi.is_integer()) throw Error(ErrorKind::model_inconsistency, "Euler characteristic is not an integer");
  d.chi = chi.num();
  d.boundary_components = boundary_components;
  const BigInt twice_genus = BigInt(2) - boundary_components - d.chi;
  if (twice_genus < 0 || twice_genus % 2 != 0) {
    throw Error(ErrorKind::model_inconsistency,
                "chi = " + d.chi.str() + " with " + std::to_string(boundary_components) +
                    " boundary component(s) gives no integral genus");
  }
  d.genus = twice_genus / 2;
  d.fixed_points = fixed_points;
  d.trace = fixed_points + 2;
  // A positive word of length n with both letters has trace >= n + 1.
  const auto classes = classes_with_trace(d.trace, static_cast<std::size_t>(std::max<std::int64_t>(d.trace, 2)));
  if (classes.size() != 1) {
    std::string listing;
    for (const auto& c : classes) listing += (listing.empty() ? "" : ", ") + c.str();
    throw Error(ErrorKind::ambiguity, std::to_string(classes.size()) +
                                          " conjugacy classes with trace " +
                                          std::to_string(d.trace) + (listing.empty() ? "" : ": " + listing));
  }
  d.monodromy = classes.front();
  return d;
}

inline int count_fixed_points(const CertificationReport& r) {
  std::vector<CyclicWord> identities;
  for (const auto& w : r.unit_intersection_orbits) {
    CyclicWord id = orbit_identity(w, r.surface);
    if (std::find(identities.begin(), identities.end(), id) == identities.end()) {
      identities.push_back(std::move(id));
    }
  }
  return static_cast<int>(identities.size());
}

inline SectionData section_data(const CertificationReport& r, int boundary_components = 1) {
  if (!r.all_negative) {
    throw Error(ErrorKind::model_inconsistency, "certificate failed; no Birkhoff section data");
  }
  return section_from_values(r.self_linking, count_fixed_points(r), boundary_components);
}

}  // namespace geolink
