#include <gtest/gtest.h>

#include <sstream>

#include "geolink/calibration.hpp"
#include "geolink/template_model.hpp"
#include "oracles/oracles.hpp"

using namespace geolink;

namespace {

const SurfaceSpec k237(2, 3, 7);
const SurfaceSpec k334(3, 3, 4);

const TemplateModel& model() {
  static const TemplateModel m = calibrate();
  return m;
}

std::vector<CyclicWord> codes(const SurfaceSpec& s, std::size_t max_len) {
  std::vector<CyclicWord> out;
  for (const auto& o : enumerate_orbits(s, max_len)) out.push_back(o.word);
  return out;
}

}  // namespace

TEST(Hopf, Examples) {
  EXPECT_EQ(hopf_linking_vector(CyclicWord("ababb")), (HopfVector{2, -3, 0}));
  EXPECT_EQ(hopf_linking_vector(CyclicWord("ab")), (HopfVector{1, -1, 0}));
  EXPECT_EQ(hopf_linking_vector(CyclicWord("abababbabb")), (HopfVector{4, -6, 0}));
}

TEST(Hopf, SignsOnAdmissibleWords) {
  for (const auto& s : {k237, k334}) {
    for (const auto& w : codes(s, 14)) {
      const auto v = hopf_linking_vector(w);
      EXPECT_GE(v.l1, 1);
      EXPECT_LE(v.l2, -1);
      EXPECT_EQ(v.l3, 0);
    }
  }
}

TEST(Calibration, SearchFindsExactlyOneModel) {
  const auto search = search_calibration();
  EXPECT_EQ(search.candidates_tried, 13u * 13u * 2u * 2u * 2u);
  ASSERT_EQ(search.solutions.size(), 1u);
  const TemplateModel& m = search.solutions.front();
  EXPECT_EQ(m.twist_a, 0);
  EXPECT_EQ(m.twist_b, 0);
  EXPECT_FALSE(m.order_reversing_a);
  EXPECT_FALSE(m.order_reversing_b);
  EXPECT_EQ(m.layering, Layering::b_over_a);
}

TEST(Calibration, FixtureValues) {
  const auto& m = model();
  EXPECT_EQ(s3_linking(CyclicWord("ababb"), CyclicWord("abababb"), m), -8);
  EXPECT_EQ(s3_linking(CyclicWord("ababb"), CyclicWord("ababbabb"), m), -9);
  EXPECT_EQ(s3_linking(CyclicWord("ababb"), CyclicWord("abababbabb"), m), -12);
  EXPECT_EQ(s3_self_linking(CyclicWord("ababb"), m), -6);
  EXPECT_EQ(s3_self_linking(CyclicWord("ab"), m), -1);
}

TEST(Calibration, OtherModelsFailTheFixture) {
  TemplateModel m = model();
  m.layering = Layering::a_over_b;
  EXPECT_FALSE(reproduces_fixture(m));
  m = model();
  m.twist_a = 1;
  m.twist_b = 1;
  EXPECT_FALSE(reproduces_fixture(m));
}

TEST(Calibration, CommittedFileLoads) {
  const Calibration c = load_calibration(GEOLINK_CALIBRATION_FILE);
  EXPECT_EQ(c.model, model());
}

TEST(Calibration, CommittedFileMatchesFreshSearch) {
  std::ostringstream fresh;
  write_calibration(fresh, search_calibration());
  std::ifstream in(GEOLINK_CALIBRATION_FILE);
  const std::string committed((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(fresh.str(), committed);
}

TEST(Calibration, TamperedFilesAreRejected) {
  std::ostringstream fresh;
  write_calibration(fresh, search_calibration());
  const std::string good = fresh.str();

  auto reject = [](const std::string& text) {
    std::istringstream in(text);
    try {
      parse_calibration(in, "test");
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::invalid_word;  // sentinel: accepted
  };
  auto replace = [&](const std::string& from, const std::string& to) {
    std::string t = good;
    t.replace(t.find(from), from.size(), to);
    return t;
  };
  EXPECT_EQ(reject(replace("twist_a=0", "twist_a=1")), ErrorKind::calibration);
  EXPECT_EQ(reject(replace("layering=b_over_a", "layering=a_over_b")), ErrorKind::calibration);
  EXPECT_EQ(reject(replace("table.3,3,4.ab=-1/3", "table.3,3,4.ab=-1/2")), ErrorKind::calibration);
  EXPECT_EQ(reject(replace("table.2,3,7.alternation=-1/1", "table.2,3,7.alternation=0/1")),
            ErrorKind::calibration);
  EXPECT_EQ(reject(replace("layering=b_over_a", "layering=sideways")), ErrorKind::io);
  EXPECT_EQ(reject(replace("twist_b=0\n", "")), ErrorKind::io);
  EXPECT_EQ(reject(replace("hopf_rule=n_a,-n_b,0", "hopf_rule=n_b,-n_a,0")), ErrorKind::calibration);
}

TEST(S3Linking, SameCodeIsRefused) {
  try {
    s3_linking(CyclicWord("ababb"), CyclicWord("babab"), model());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::same_orbit);
  }
}

TEST(S3Linking, MatchesBraidCrossingOracle) {
  for (const auto& s : {k237, k334}) {
    const auto list = codes(s, 11);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string& u = list[i].str();
      EXPECT_EQ(s3_self_linking(list[i], model()), -oracle::braid_crossings({u}, 0, 0)) << u;
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        const std::string& v = list[j].str();
        const long long crossings = oracle::braid_crossings({u, v}, 0, 1);
        ASSERT_EQ(crossings % 2, 0);
        EXPECT_EQ(s3_linking(list[i], list[j], model()), -crossings / 2) << u << " " << v;
      }
    }
  }
}

TEST(S3Linking, SelfLinkingOfTheOtherGamma8Lift) {
  EXPECT_EQ(s3_self_linking(CyclicWord("aabb"), model()), -oracle::braid_crossings({"aabb"}, 0, 0));
  EXPECT_EQ(s3_self_linking(CyclicWord("aabb"), model()), -3);
}

TEST(S3Linking, SymmetricNegativeRotationInvariant) {
  for (const auto& s : {k237, k334}) {
    const auto list = codes(s, 12);
    for (std::size_t i = 0; i < list.size(); ++i) {
      EXPECT_LT(s3_self_linking(list[i], model()), 0);
      EXPECT_EQ(s3_self_linking(list[i].rotated(1), model()), s3_self_linking(list[i], model()));
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        const long long v = s3_linking(list[i], list[j], model());
        EXPECT_LT(v, 0);
        EXPECT_EQ(s3_linking(list[j], list[i], model()), v);
        EXPECT_EQ(s3_linking(list[i].rotated(1), list[j].rotated(2), model()), v);
      }
    }
  }
}

TEST(S3Linking, AdditiveOverAdmissibleSplits237) {
  const CyclicWord h("ababb");
  for (const auto& w : codes(k237, 12)) {
    if (w == h) continue;
    for (std::size_t r = 0; r < w.size(); ++r) {
      const std::string rot = w.rotated(r).str();
      for (std::size_t cut = 1; cut < rot.size(); ++cut) {
        const CyclicWord u(rot.substr(0, cut)), v(rot.substr(cut));
        if (!is_admissible(u, k237) || !is_admissible(v, k237)) continue;
        if (same_orbit_code(u, h) || same_orbit_code(v, h)) continue;
        EXPECT_EQ(s3_linking(h, w, model()), s3_linking(h, u, model()) + s3_linking(h, v, model()))
            << u.str() << " | " << v.str();
      }
    }
  }
}

TEST(S3Linking, AdditivityBreaksAtAlternatingBlocks) {
  // x^2y . xy^2 (length 15): one more crossing pair than the two blocks.
  const CyclicWord h("ababb");
  const CyclicWord w("abababbababbabb");
  ASSERT_TRUE(is_admissible(w, k237));
  EXPECT_EQ(s3_linking(h, w, model()),
            s3_linking(h, CyclicWord("abababb"), model()) + s3_linking(h, CyclicWord("ababbabb"), model()) - 1);
}

TEST(ConstantsFile, ParsesCommentsAndRejectsGarbage) {
  std::istringstream ok("# c\n\nkey = value\nn=3\n");
  const auto f = ConstantsFile::parse(ok);
  EXPECT_EQ(f.get("key"), "value");
  EXPECT_EQ(f.get_int("n"), 3);
  EXPECT_FALSE(f.find("missing"));
  std::istringstream bad("novalue\n");
  EXPECT_THROW(ConstantsFile::parse(bad), Error);
  std::istringstream dup("a=1\na=2\n");
  EXPECT_THROW(ConstantsFile::parse(dup), Error);
}
