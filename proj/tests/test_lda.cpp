#include <gtest/gtest.h>

#include <map>
#include <numeric>

#include "screenplaynet/entity_extraction.hpp"
#include "screenplaynet/error.hpp"
#include "support/lda_fixtures.hpp"

using namespace screenplaynet;

TEST(Lda, SingleTopicAssignsEverythingToZero) {
  auto docs = ldafix::disjoint_corpus(5);
  auto model = lda_gibbs(docs, {1, 50.0, 0.01, 30, 42});
  for (const auto& doc : model.assignments()) {
    for (int z : doc) EXPECT_EQ(z, 0);
  }
  // phi is proportional to corpus frequency: (n_t + beta) / (N + V beta).
  std::map<std::string, int> freq;
  std::size_t total = 0;
  for (const auto& d : docs) {
    for (const auto& w : d) {
      ++freq[w];
      ++total;
    }
  }
  const double v = static_cast<double>(model.vocabulary().size());
  for (const auto& [term, n] : freq) {
    auto idx = model.term_index(term);
    ASSERT_TRUE(idx);
    EXPECT_NEAR(model.phi(0, *idx), (n + 0.01) / (static_cast<double>(total) + v * 0.01), 1e-12);
  }
}

TEST(Lda, DisjointVocabulariesSeparate) {
  auto docs = ldafix::disjoint_corpus(3);
  double sum = 0.0;
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    auto model = lda_gibbs(docs, {2, 0.5, 0.01, 500, seed});
    sum += ldafix::purity(docs, model);
  }
  EXPECT_GE(sum / 5.0, 0.9);
}

TEST(Lda, FixedSeedIsBitReproducible) {
  auto docs = ldafix::disjoint_corpus(9);
  auto a = lda_gibbs(docs, {4, 12.5, 0.01, 100, 77});
  auto b = lda_gibbs(docs, {4, 12.5, 0.01, 100, 77});
  EXPECT_EQ(a.assignments(), b.assignments());
  for (int k = 0; k < 4; ++k) {
    for (std::size_t t = 0; t < a.vocabulary().size(); ++t) EXPECT_EQ(a.phi(k, t), b.phi(k, t));
  }
  auto c = lda_gibbs(docs, {4, 12.5, 0.01, 100, 78});
  EXPECT_NE(a.assignments(), c.assignments());
}

TEST(Lda, PhiRowsSumToOne) {
  auto docs = ldafix::disjoint_corpus(2);
  auto model = lda_gibbs(docs, {3, 1.0, 0.1, 50, 5});
  for (int k = 0; k < 3; ++k) {
    double s = 0.0;
    for (std::size_t t = 0; t < model.vocabulary().size(); ++t) s += model.phi(k, t);
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(Lda, TopWordsOrderedByPhiThenTerm) {
  auto docs = ldafix::disjoint_corpus(4);
  auto model = lda_gibbs(docs, {2, 1.0, 0.01, 50, 5});
  for (int k = 0; k < 2; ++k) {
    auto top = model.top_words(k, 1000);
    EXPECT_EQ(top.size(), model.vocabulary().size());
    for (std::size_t i = 1; i < top.size(); ++i) {
      double prev = model.phi(k, *model.term_index(top[i - 1]));
      double cur = model.phi(k, *model.term_index(top[i]));
      EXPECT_TRUE(prev > cur || (prev == cur && top[i - 1] < top[i]));
    }
  }
}

TEST(Lda, InvalidParameters) {
  auto docs = ldafix::disjoint_corpus(1);
  auto kind = [&](LdaParams p) {
    try {
      lda_gibbs(docs, p);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::kIo;
  };
  EXPECT_EQ(kind({0, 1.0, 0.01, 10, 1}), ErrorKind::kInvalidParams);
  EXPECT_EQ(kind({2, 0.0, 0.01, 10, 1}), ErrorKind::kInvalidParams);
  EXPECT_EQ(kind({2, 1.0, -0.5, 10, 1}), ErrorKind::kInvalidParams);
  EXPECT_EQ(kind({2, 1.0, 0.01, 0, 1}), ErrorKind::kInvalidParams);
  try {
    lda_gibbs({{}, {}}, {2, 1.0, 0.01, 10, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyCorpus);
  }
}
