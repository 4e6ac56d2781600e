#pragma once

// Command-line front end. All output is exact; rationals print as "num/den".

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "geolink/birkhoff.hpp"
#include "geolink/calibration.hpp"
#include "geolink/error.hpp"
#include "geolink/sl2.hpp"
#include "geolink/surgery.hpp"
#include "geolink/version.hpp"
#include "geolink/words.hpp"

#ifndef GEOLINK_DEFAULT_CALIBRATION
#define GEOLINK_DEFAULT_CALIBRATION "data/template_calibration.txt"
#endif

namespace geolink::cli {

using json = nlohmann::json;

enum class OutputFormat { json, csv, text };

struct RunConfig {
  std::string surface = "2,3,7";
  std::string base;
  std::size_t max_len = 20;
  std::string mode = "fast";
  std::string output = "text";
  std::string calibration;
  int boundary_components = 1;
};

inline std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot read '" + path + "'");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::io, "SHA-256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return "sha256:" + hex.str();
}

inline SurfaceSpec parse_surface(const std::string& text) {
  std::vector<int> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      const int x = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      v.push_back(x);
    } catch (const std::exception&) {
      throw Error(ErrorKind::invalid_surface, "surface '" + text + "' is not p,q,r");
    }
  }
  if (v.size() != 3) throw Error(ErrorKind::invalid_surface, "surface '" + text + "' is not p,q,r");
  return SurfaceSpec(v[0], v[1], v[2]);
}

inline json rational_json(const Rational& r) {
  return {{"num", r.num().convert_to<long long>()}, {"den", r.den().convert_to<long long>()}};
}

inline json orbit_record(const CyclicWord& w, const SurfaceSpec& s,
                         const std::optional<Rational>& linking) {
  const auto c = letter_counts(w);
  json j = {{"word", w.str()},
            {"canonical", canonicalize(w).str()},
            {"identity", orbit_identity(w, s).str()},
            {"n_a", c.n_a},
            {"n_b", c.n_b}};
  if (linking) j["linking"] = rational_json(*linking);
  return j;
}

inline std::string finite_prefix_statement(std::size_t max_len) {
  return "checked exhaustively on all orbit codes of length <= " + std::to_string(max_len) +
         "; no claim is made for longer orbits";
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Exact linking numbers and Birkhoff sections for geodesic flows of (2,3,7) and (3,3,4)"};
    app.name("geolink");
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.add_option("--output", cfg_.output, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--calibration", cfg_.calibration,
                   "template constants file (default: $GEOLINK_CALIBRATION or the installed file)");

    auto surface_opt = [&](CLI::App* sub) {
      sub->add_option("--surface", cfg_.surface, "cone orders p,q,r");
    };
    auto output_opt = [&](CLI::App* sub) {
      sub->add_option("--output", cfg_.output, "json, csv or text")
          ->check(CLI::IsMember({"json", "csv", "text"}));
      sub->add_option("--calibration", cfg_.calibration, "template constants file");
    };

    std::vector<std::string> words;
    std::string matrix_text;
    std::optional<long long> trace_value;
    std::string family;
    std::vector<long long> params;
    std::size_t lr_max_len = 12;

    auto* enumerate = app.add_subcommand("enumerate", "list canonical admissible orbit codes");
    surface_opt(enumerate);
    output_opt(enumerate);
    enumerate->add_option("--max-len", cfg_.max_len, "longest code")->check(CLI::PositiveNumber);

    auto* link = app.add_subcommand("link", "linking number of two orbits after surgery");
    surface_opt(link);
    output_opt(link);
    link->add_option("words", words, "two orbit codes")->expected(2)->required();

    auto* selflink = app.add_subcommand("selflink", "linking of an orbit with its stable push-off");
    surface_opt(selflink);
    output_opt(selflink);
    selflink->add_option("words", words, "orbit code")->expected(1)->required();

    auto* certify_cmd = app.add_subcommand("certify", "check negative linking with the base orbit");
    surface_opt(certify_cmd);
    output_opt(certify_cmd);
    certify_cmd->add_option("--base", cfg_.base, "h, gamma8 or a code of the base geodesic");
    certify_cmd->add_option("--max-len", cfg_.max_len, "longest code")->check(CLI::PositiveNumber);
    certify_cmd->add_option("--mode", cfg_.mode, "fast or oracle")
        ->check(CLI::IsMember({"fast", "oracle"}));

    auto* section = app.add_subcommand("section", "Birkhoff section invariants");
    surface_opt(section);
    output_opt(section);
    section->add_option("--base", cfg_.base, "h, gamma8 or a code of the base geodesic");
    section->add_option("--max-len", cfg_.max_len, "longest code")->check(CLI::PositiveNumber);
    section->add_option("--boundary", cfg_.boundary_components, "boundary components")
        ->check(CLI::PositiveNumber);

    auto* homology_cmd = app.add_subcommand("homology", "first homology of the unit tangent bundle");
    surface_opt(homology_cmd);
    output_opt(homology_cmd);

    auto* sl2_trace = app.add_subcommand("sl2-trace", "matrix and trace of an LR word");
    output_opt(sl2_trace);
    sl2_trace->add_option("words", words, "LR word, exponents allowed (LR2LR2)")->expected(1)->required();

    auto* sl2_classify = app.add_subcommand("sl2-classify", "conjugacy classes as cyclic LR words");
    output_opt(sl2_classify);
    auto* matrix_opt = sl2_classify->add_option("--matrix", matrix_text, "a,b,c,d");
    auto* trace_opt = sl2_classify->add_option("--trace", trace_value, "list classes of this trace");
    matrix_opt->excludes(trace_opt);
    sl2_classify->add_option("--max-len", lr_max_len, "longest word for --trace")
        ->check(CLI::PositiveNumber);

    auto* appendix = app.add_subcommand("appendix-check", "first-return classes of the genus-one table");
    output_opt(appendix);
    appendix->add_option("--family", family, "table row, e.g. sphere-2-3-r");
    appendix->add_option("--params", params, "row parameters")->delimiter(',');

    std::vector<std::string> argv_storage{"geolink"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());

    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
      out_ << app.help();
      return 0;
    } catch (const CLI::CallForVersion& e) {
      out_ << kVersion << '\n';
      return 0;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << '\n';
      return 2;
    }

    try {
      format_ = cfg_.output == "json" ? OutputFormat::json
                : cfg_.output == "csv" ? OutputFormat::csv
                                       : OutputFormat::text;
      if (*enumerate) return cmd_enumerate();
      if (*link) return cmd_link(words);
      if (*selflink) return cmd_selflink(words.front());
      if (*certify_cmd) return cmd_certify();
      if (*section) return cmd_section();
      if (*homology_cmd) return cmd_homology();
      if (*sl2_trace) return cmd_sl2_trace(words.front());
      if (*sl2_classify) {
        if (!matrix_text.empty()) return cmd_sl2_matrix(matrix_text);
        if (trace_value) return cmd_sl2_trace_classes(*trace_value, lr_max_len);
        throw Error(ErrorKind::invalid_matrix, "sl2-classify needs --matrix or --trace");
      }
      if (*appendix) return cmd_appendix(family, params);
    } catch (const Error& e) {
      err_ << "error: " << e.what() << '\n';
      return e.is_input_error() ? 2 : 1;
    }
    return 2;
  }

 private:
  std::string calibration_path() const {
    if (!cfg_.calibration.empty()) return cfg_.calibration;
    if (const char* env = std::getenv("GEOLINK_CALIBRATION"); env && *env) return env;
    return GEOLINK_DEFAULT_CALIBRATION;
  }

  const TemplateModel& model() {
    if (!calibration_) calibration_ = load_calibration(calibration_path());
    return calibration_->model;
  }

  json envelope(const std::string& command) {
    json j;
    j["schema"] = std::string(kSchema);
    j["command"] = command;
    j["tool_version"] = std::string(kVersion);
    try {
      j["calibration_digest"] = sha256_file(calibration_path());
    } catch (const Error&) {
      j["calibration_digest"] = nullptr;
    }
    return j;
  }

  BaseOrbit base_for(const SurfaceSpec& s) const {
    return cfg_.base.empty() ? BaseOrbit::for_surface(s) : BaseOrbit::parse(cfg_.base, s);
  }

  // Renders doc; text mode uses the supplied lines, csv mode the rows or,
  // if none, the scalar fields of doc.
  void emit(const json& doc, const std::vector<std::string>& text,
            const std::vector<std::vector<std::string>>& rows = {}) {
    switch (format_) {
      case OutputFormat::json:
        out_ << doc.dump(2) << '\n';
        break;
      case OutputFormat::text:
        for (const auto& line : text) out_ << line << '\n';
        break;
      case OutputFormat::csv:
        if (!rows.empty()) {
          for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out_ << (i ? "," : "") << row[i];
            out_ << '\n';
          }
        } else {
          out_ << "key,value\n";
          for (const auto& [k, v] : doc.items()) {
            if (v.is_structured()) continue;
            out_ << k << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
          }
        }
        break;
    }
  }

  int cmd_enumerate() {
    const SurfaceSpec s = parse_surface(cfg_.surface);
    const auto orbits = enumerate_orbits(s, cfg_.max_len);
    json doc = envelope("enumerate");
    doc["surface"] = s.str();
    doc["max_len"] = cfg_.max_len;
    doc["finite_prefix"] = finite_prefix_statement(cfg_.max_len);
    doc["count"] = orbits.size();
    doc["orbits"] = json::array();
    std::vector<std::string> text;
    std::vector<std::vector<std::string>> rows{{"word", "canonical", "identity", "n_a", "n_b"}};
    for (const auto& o : orbits) {
      doc["orbits"].push_back(orbit_record(o.word, s, std::nullopt));
      const auto c = letter_counts(o.word);
      std::string line = o.word.str();
      if (o.identity != o.word) line += "  (code of " + o.identity.str() + ")";
      text.push_back(line);
      rows.push_back({o.word.str(), o.word.str(), o.identity.str(), std::to_string(c.n_a),
                      std::to_string(c.n_b)});
    }
    emit(doc, text, rows);
    return 0;
  }

  int cmd_link(const std::vector<std::string>& words) {
    const SurfaceSpec s = parse_surface(cfg_.surface);
    const CyclicWord w1(words.at(0)), w2(words.at(1));
    const Rational value = surgered_linking(s, w1, w2, model());
    json doc = envelope("link");
    doc["surface"] = s.str();
    doc["orbits"] = {orbit_record(w1, s, std::nullopt), orbit_record(w2, s, std::nullopt)};
    doc["s3_linking"] = Rational(s3_linking(w1, w2, model())).str();
    doc["linking"] = value.str();
    emit(doc, {value.str()});
    return 0;
  }

  int cmd_selflink(const std::string& word) {
    const SurfaceSpec s = parse_surface(cfg_.surface);
    const CyclicWord w(word);
    const Rational value = surgered_self_linking(s, w, model());
    json doc = envelope("selflink");
    doc["surface"] = s.str();
    doc["orbit"] = orbit_record(w, s, std::nullopt);
    doc["s3_self_linking"] = Rational(s3_self_linking(w, model())).str();
    doc["self_linking"] = value.str();
    emit(doc, {value.str()});
    return 0;
  }

  json report_json(const CertificationReport& r) {
    json doc = envelope("certify");
    doc["surface"] = r.surface.str();
    doc["base"] = {{"role", std::string(to_string(r.base.role))}, {"word", r.base.word.str()}};
    doc["mode"] = std::string(to_string(r.mode));
    doc["max_len"] = r.max_len;
    doc["finite_prefix"] = finite_prefix_statement(r.max_len);
    doc["all_negative"] = r.all_negative;
    doc["self_linking"] = r.self_linking.str();
    doc["min_value"] = r.min_value.str();
    doc["min_witness"] = r.min_witness.str();
    doc["max_non_base"] = r.max_non_base ? json(r.max_non_base->str()) : json(nullptr);
    doc["max_non_base_witness"] =
        r.max_non_base_witness ? json(r.max_non_base_witness->str()) : json(nullptr);
    doc["unit_intersection_orbits"] = json::array();
    for (const auto& w : r.unit_intersection_orbits) doc["unit_intersection_orbits"].push_back(w.str());
    doc["assumptions"] = {
        "the blown-up boundary orbits are covered by the stable self-linking; the unstable "
        "framing is assumed to give the same value"};
    doc["orbits"] = json::array();
    for (const auto& o : r.orbits) doc["orbits"].push_back(orbit_record(o.word, r.surface, o.linking));
    return doc;
  }

  int cmd_certify() {
    const SurfaceSpec s = parse_surface(cfg_.surface);
    const BaseOrbit base = base_for(s);
    const Mode mode = cfg_.mode == "oracle" ? Mode::oracle : Mode::fast;
    const CertificationReport r = certify(base, cfg_.max_len, mode, model());
    const json doc = report_json(r);
    std::vector<std::string> text{
        "surface " + s.str() + ", base " + std::string(to_string(base.role)) + " (" +
            base.word.str() + "), mode " + std::string(to_string(mode)),
        finite_prefix_statement(r.max_len),
        "orbits checked: " + std::to_string(r.orbits.size()),
        "self-linking: " + r.self_linking.str(),
        "min value: " + r.min_value.str() + " at " + r.min_witness.str(),
        "max over other orbits: " +
            (r.max_non_base ? r.max_non_base->str() + " at " + r.max_non_base_witness->str()
                            : std::string("none")),
        std::string("all negative: ") + (r.all_negative ? "yes" : "NO"),
        "elapsed: " + std::to_string(r.elapsed.count()) + " s"};
    std::vector<std::vector<std::string>> rows{{"word", "canonical", "identity", "n_a", "n_b", "linking"}};
    for (const auto& o : r.orbits) {
      const auto c = letter_counts(o.word);
      rows.push_back({o.word.str(), o.word.str(), o.identity.str(), std::to_string(c.n_a),
                      std::to_string(c.n_b), o.linking.str()});
    }
    emit(doc, text, rows);
    return r.all_negative ? 0 : 1;
  }

  int cmd_section() {
    const SurfaceSpec s = parse_surface(cfg_.surface);
    const BaseOrbit base = base_for(s);
    const CertificationReport r = certify(base, cfg_.max_len, Mode::fast, model());
    const SectionData d = section_data(r, cfg_.boundary_components);
    const IntMatrix2 m = word_to_matrix(d.monodromy);
    json doc = envelope("section");
    doc["surface"] = s.str();
    doc["base"] = {{"role", std::string(to_string(base.role))}, {"word", base.word.str()}};
    doc["max_len"] = cfg_.max_len;
    doc["finite_prefix"] = finite_prefix_statement(cfg_.max_len);
    doc["self_linking"] = r.self_linking.str();
    doc["multiplicity"] = d.multiplicity.str();
    doc["chi"] = d.chi.str();
    doc["boundary_components"] = d.boundary_components;
    doc["genus"] = d.genus.str();
    doc["fixed_points"] = d.fixed_points;
    doc["trace"] = d.trace;
    doc["monodromy"] = d.monodromy.str();
    doc["monodromy_matrix"] = {{m.m11, m.m12}, {m.m21, m.m22}};
    if (d.multiplicity > 1) {
      doc["multiplicity_note"] =
          "multiplicity taken as the denominator of the self-linking (" +
          r.self_linking.str() + ")";
    }
    std::vector<std::string> text{
        "surface " + s.str() + ", base " + std::string(to_string(base.role)),
        "multiplicity: " + d.multiplicity.str(),
        "chi: " + d.chi.str(),
        "boundary components: " + std::to_string(d.boundary_components),
        "genus: " + d.genus.str(),
        "fixed points: " + std::to_string(d.fixed_points),
        "trace: " + std::to_string(d.trace),
        "monodromy: " + d.monodromy.str()};
    if (d.multiplicity > 1) text.push_back("note: " + doc["multiplicity_note"].get<std::string>());
    emit(doc, text);
    return 0;
  }

  int cmd_homology() {
    const SurfaceSpec s = parse_surface(cfg_.surface);
    const AbelianGroup g = homology(s);
    json doc = envelope("homology");
    doc["surface"] = s.str();
    doc["group"] = g.str();
    doc["invariant_factors"] = json::array();
    for (const auto& f : g.factors) doc["invariant_factors"].push_back(f.str());
    doc["free_rank"] = g.free_rank;
    doc["order"] = g.is_finite() ? json(g.order().str()) : json(nullptr);
    emit(doc, {g.str()});
    return 0;
  }

  int cmd_sl2_trace(const std::string& text) {
    const LRWord w = parse_lr_word(text);
    const IntMatrix2 m = word_to_matrix(w);
    json doc = envelope("sl2-trace");
    doc["word"] = w.str();
    doc["matrix"] = {{m.m11, m.m12}, {m.m21, m.m22}};
    doc["trace"] = m.trace();
    emit(doc, {std::to_string(m.trace())});
    return 0;
  }

  int cmd_sl2_matrix(const std::string& text) {
    std::vector<std::int64_t> v;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stoll(part, &used));
        if (used != part.size()) throw std::invalid_argument(part);
      } catch (const std::exception&) {
        throw Error(ErrorKind::invalid_matrix, "matrix '" + text + "' is not a,b,c,d");
      }
    }
    if (v.size() != 4) throw Error(ErrorKind::invalid_matrix, "matrix '" + text + "' is not a,b,c,d");
    const IntMatrix2 m{v[0], v[1], v[2], v[3]};
    const LRWord w = matrix_to_lr_word(m);
    json doc = envelope("sl2-classify");
    doc["matrix"] = {{m.m11, m.m12}, {m.m21, m.m22}};
    doc["trace"] = m.trace();
    doc["word"] = w.str();
    emit(doc, {w.str()});
    return 0;
  }

  int cmd_sl2_trace_classes(long long t, std::size_t max_len) {
    const auto classes = classes_with_trace(t, max_len);
    json doc = envelope("sl2-classify");
    doc["trace"] = t;
    doc["max_len"] = max_len;
    doc["classes"] = json::array();
    std::vector<std::string> text;
    for (const auto& c : classes) {
      doc["classes"].push_back(c.str());
      text.push_back(c.str());
    }
    emit(doc, text);
    return 0;
  }

  int cmd_appendix(const std::string& family, const std::vector<long long>& params) {
    json doc = envelope("appendix-check");
    if (family.empty()) {
      // Compare the Sigma_{0;2,3,7} row with the section found for h.
      const AppendixRow row = appendix_table(AppendixFamily::sphere_2_3_r, {2, 3, 7});
      const CertificationReport r = certify(BaseOrbit::h(), cfg_.max_len, Mode::fast, model());
      const SectionData d = section_data(r);
      const bool agree = row.word && cyclically_equal(*row.word, d.monodromy) &&
                         row.boundary_count == d.boundary_components;
      doc["row"] = "sphere-2-3-r";
      doc["params"] = {2, 3, 7};
      doc["table_word"] = cyclic_canonical(*row.word).str();
      doc["table_boundary"] = row.boundary_count;
      doc["section_monodromy"] = d.monodromy.str();
      doc["section_boundary"] = d.boundary_components;
      doc["agree"] = agree;
      emit(doc, {std::string("sphere-2-3-r (2,3,7): table ") + cyclic_canonical(*row.word).str() +
                 ", section " + d.monodromy.str() + (agree ? ", agree" : ", DISAGREE")});
      return agree ? 0 : 1;
    }
    const auto fam = parse_appendix_family(family);
    if (!fam) throw Error(ErrorKind::out_of_range, "unknown table row '" + family + "'");
    const AppendixRow row = appendix_table(*fam, params);
    doc["row"] = family;
    doc["params"] = params;
    doc["boundary_count"] = row.boundary_count;
    if (row.word) {
      const LRWord canonical = cyclic_canonical(*row.word);
      doc["word"] = row.word->str();
      doc["canonical_word"] = canonical.str();
      doc["trace"] = trace(*row.word);
      emit(doc, {"boundary components: " + std::to_string(row.boundary_count),
                 "first return: " + canonical.str() + " (trace " + std::to_string(trace(*row.word)) + ")"});
    } else {
      doc["word"] = nullptr;
      emit(doc, {"boundary components: " + std::to_string(row.boundary_count),
                 "first return: not given by the table"});
    }
    return 0;
  }

  std::ostream& out_;
  std::ostream& err_;
  RunConfig cfg_;
  OutputFormat format_ = OutputFormat::text;
  std::optional<Calibration> calibration_;
};

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Runner(out, err).run(args);
}

}  // namespace geolink::cli
