#include <gtest/gtest.h>

#include <set>

#include "geolink/sl2.hpp"
#include "oracles/oracles.hpp"

using namespace geolink;

namespace {

std::vector<std::string> lr_words(std::size_t n) {
  std::vector<std::string> out;
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    std::string w;
    for (std::size_t i = 0; i < n; ++i) w += (bits >> i) & 1 ? 'R' : 'L';
    out.push_back(w);
  }
  return out;
}

IntMatrix2 inverse(const IntMatrix2& m) { return {m.m22, -m.m12, -m.m21, m.m11}; }

}  // namespace

TEST(LRWord, ParseExponents) {
  EXPECT_EQ(parse_lr_word("LR2LR2").str(), "LRRLRR");
  EXPECT_EQ(parse_lr_word("L^2R").str(), "LLR");
  EXPECT_EQ(parse_lr_word("RL").str(), "RL");
  EXPECT_THROW(parse_lr_word("LX"), Error);
  EXPECT_THROW(parse_lr_word(""), Error);
  EXPECT_THROW(LRWord("ab"), Error);
}

TEST(LRWord, CyclicCanonical) {
  EXPECT_EQ(cyclic_canonical(LRWord("RL")).str(), "LR");
  EXPECT_TRUE(cyclically_equal(LRWord("RRRLR"), LRWord("LRRRR")));
  EXPECT_FALSE(cyclically_equal(LRWord("LLRR"), LRWord("LRLR")));
}

TEST(Matrix, Generators) {
  EXPECT_EQ(word_to_matrix(LRWord("L")), kL);
  EXPECT_EQ(word_to_matrix(LRWord("R")), kR);
  EXPECT_EQ(word_to_matrix(LRWord("")), IntMatrix2{});
  EXPECT_EQ(word_to_matrix(LRWord("RL")), (IntMatrix2{2, 1, 1, 1}));
  EXPECT_EQ(trace(LRWord("L")), 2);
}

TEST(Matrix, TraceOfLR2LR2) {
  EXPECT_EQ(word_to_matrix(parse_lr_word("LR2LR2")), (IntMatrix2{3, 8, 4, 11}));
  EXPECT_EQ(trace(parse_lr_word("LR2LR2")), 14);
}

TEST(Matrix, AgreesWithOracleProduct) {
  for (std::size_t n = 1; n <= 10; ++n) {
    for (const auto& w : lr_words(n)) {
      const IntMatrix2 m = word_to_matrix(LRWord(w));
      const oracle::Mat2 o = oracle::word_matrix(w);
      EXPECT_EQ(m, (IntMatrix2{o.a, o.b, o.c, o.d}));
      EXPECT_EQ(m.det(), 1);
      EXPECT_EQ(oracle::peel_positive(o), w);
    }
  }
}

TEST(Matrix, OverflowIsReported) {
  std::string w;
  for (int i = 0; i < 60; ++i) w += "LR";
  EXPECT_THROW(word_to_matrix(LRWord(w)), Error);
}

TEST(Classify, RoundTripAllWordsUpToLength8) {
  for (std::size_t n = 2; n <= 8; ++n) {
    for (const auto& w : lr_words(n)) {
      const LRWord word(w);
      if (!word.has_both_letters()) continue;
      const LRWord back = matrix_to_lr_word(word_to_matrix(word));
      EXPECT_EQ(back, cyclic_canonical(word)) << w;
    }
  }
}

TEST(Classify, ConjugatedInputs) {
  const std::vector<IntMatrix2> conjugators{{1, 1, 0, 1}, {2, 1, 1, 1}, {0, -1, 1, 0},
                                            {3, -2, -1, 1}, {5, 3, 3, 2}, {1, -4, 0, 1}};
  for (std::size_t n = 2; n <= 6; ++n) {
    for (const auto& w : lr_words(n)) {
      const LRWord word(w);
      if (!word.has_both_letters()) continue;
      for (const auto& g : conjugators) {
        const IntMatrix2 m = g * word_to_matrix(word) * inverse(g);
        EXPECT_EQ(matrix_to_lr_word(m), cyclic_canonical(word)) << w;
      }
    }
  }
}

TEST(Classify, NegativeTraceAndErrors) {
  try {
    matrix_to_lr_word({2, 0, 0, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_matrix);
  }
  try {
    matrix_to_lr_word({1, 1, 0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_hyperbolic);
  }
  EXPECT_THROW(matrix_to_lr_word({-2, -1, -1, -1}), Error);
}

TEST(Classify, ClassesWithTrace) {
  EXPECT_EQ(classes_with_trace(3, 12), (std::vector<LRWord>{LRWord("LR")}));
  EXPECT_EQ(classes_with_trace(3, 2), (std::vector<LRWord>{LRWord("LR")}));
  EXPECT_TRUE(classes_with_trace(2, 12).empty());
  EXPECT_EQ(classes_with_trace(4, 12), (std::vector<LRWord>{LRWord("LLR"), LRWord("LRR")}));
}

TEST(Classify, ClassesWithTraceMatchesExhaustiveSearch) {
  const auto naive = oracle::naive_classes(12);
  for (long long t = 3; t <= 12; ++t) {
    std::set<std::string> got;
    for (const auto& c : classes_with_trace(t, 12)) got.insert(c.str());
    const auto it = naive.find(t);
    EXPECT_EQ(got, it == naive.end() ? std::set<std::string>{} : it->second) << t;
  }
}

TEST(Appendix, Rows) {
  const AppendixRow a = appendix_table(AppendixFamily::sphere_2_3_r, {2, 3, 7});
  EXPECT_EQ(a.boundary_count, 1);
  ASSERT_TRUE(a.word);
  EXPECT_TRUE(cyclically_equal(*a.word, LRWord("LR")));

  const AppendixRow g = appendix_table(AppendixFamily::genus_a, {2});
  EXPECT_EQ(g.boundary_count, 12);
  EXPECT_EQ(g.word->str(), "LRRLRR");
  EXPECT_EQ(trace(*g.word), 14);

  const AppendixRow s = appendix_table(AppendixFamily::sphere_p_q_r_s, {2, 2, 2, 3});
  EXPECT_EQ(s.boundary_count, 2);
  EXPECT_TRUE(cyclically_equal(*s.word, LRWord("RRRLR")));

  const AppendixRow t = appendix_table(AppendixFamily::sphere_p_q_r, {3, 3, 4});
  EXPECT_TRUE(cyclically_equal(*t.word, LRWord("RRLR")));
  EXPECT_EQ(trace(*t.word), 5);

  EXPECT_FALSE(appendix_table(AppendixFamily::sphere_all_ge4, {4, 5, 6}).word);
  EXPECT_EQ(appendix_table(AppendixFamily::sphere_even, {2, 2, 3, 3}).boundary_count, 2);
  EXPECT_EQ(appendix_table(AppendixFamily::genus_with_cones, {1, 2, 3}).boundary_count, 9);
}

TEST(Appendix, WordsRoundTripThroughMatrices) {
  for (long long r = 7; r <= 12; ++r) {
    const auto row = appendix_table(AppendixFamily::sphere_2_3_r, {2, 3, r});
    EXPECT_EQ(matrix_to_lr_word(word_to_matrix(*row.word)), cyclic_canonical(*row.word));
  }
  for (long long g = 2; g <= 4; ++g) {
    for (auto f : {AppendixFamily::genus_a, AppendixFamily::genus_b, AppendixFamily::genus_c}) {
      const auto row = appendix_table(f, {g});
      EXPECT_EQ(matrix_to_lr_word(word_to_matrix(*row.word)), cyclic_canonical(*row.word));
    }
  }
}

TEST(Appendix, Errors) {
  for (const auto& [family, params] : std::vector<std::pair<AppendixFamily, std::vector<long long>>>{
           {AppendixFamily::sphere_2_3_r, {2, 3, 6}},
           {AppendixFamily::sphere_2_3_r, {2, 3}},
           {AppendixFamily::genus_a, {1}},
           {AppendixFamily::sphere_even, {2, 3, 4}},
           {AppendixFamily::sphere_all_ge4, {3, 5}}}) {
    try {
      appendix_table(family, params);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::out_of_range);
    }
  }
  EXPECT_EQ(parse_appendix_family("sphere-2-3-r"), AppendixFamily::sphere_2_3_r);
  EXPECT_FALSE(parse_appendix_family("torus"));
}
