#include <algorithm>
#include <cmath>
#include <random>

#include "screenplaynet/entity_extraction.hpp"
#include "screenplaynet/error.hpp"
#include "text_util.hpp"

namespace screenplaynet {

namespace {

constexpr std::size_t kMinTokenLength = 3;

bool is_number(std::string_view token) {
  return !token.empty() && std::all_of(token.begin(), token.end(), text::is_digit);
}

// Uniform double in [0, 1) from the top 53 bits; independent of the
// standard library's distribution implementations.
double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<std::string> tokenize_dialogue(std::string_view utterance_text,
                                           const std::set<std::string>& stopwords) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.size() >= kMinTokenLength && !is_number(current) &&
        stopwords.count(current) == 0) {
      tokens.push_back(current);
    }
    current.clear();
  };
  for (char c : utterance_text) {
    if (text::is_alnum(c)) {
      current.push_back(text::to_lower(c));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::map<std::string, double> tfidf_scores(const std::vector<std::vector<std::string>>& docs) {
  std::vector<std::map<std::string, std::size_t>> counts;
  counts.reserve(docs.size());
  std::map<std::string, std::size_t> document_frequency;
  bool any = false;
  for (const auto& doc : docs) {
    std::map<std::string, std::size_t> tf;
    for (const auto& term : doc) ++tf[term];
    for (const auto& [term, n] : tf) ++document_frequency[term];
    any = any || !doc.empty();
    counts.push_back(std::move(tf));
  }
  if (!any) throw Error(ErrorKind::kEmptyCorpus, "every document is empty");

  const double n_docs = static_cast<double>(docs.size());
  std::map<std::string, double> scores;
  for (const auto& [term, df] : document_frequency) {
    const double idf = std::log(n_docs / static_cast<double>(df));
    std::size_t max_tf = 0;
    for (const auto& tf : counts) {
      auto it = tf.find(term);
      if (it != tf.end()) max_tf = std::max(max_tf, it->second);
    }
    scores[term] = static_cast<double>(max_tf) * idf;
  }
  return scores;
}

double LdaModel::phi(int topic, std::size_t term_index) const {
  const double v = static_cast<double>(vocabulary_.size());
  return (static_cast<double>(topic_term_[topic][term_index]) + beta_) /
         (static_cast<double>(topic_total_[topic]) + v * beta_);
}

std::optional<std::size_t> LdaModel::term_index(std::string_view term) const {
  auto it = std::lower_bound(vocabulary_.begin(), vocabulary_.end(), term);
  if (it == vocabulary_.end() || *it != term) return std::nullopt;
  return static_cast<std::size_t>(it - vocabulary_.begin());
}

std::vector<std::string> LdaModel::top_words(int topic, std::size_t n) const {
  std::vector<std::size_t> order(vocabulary_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  // Within a topic phi is monotone in the raw count, so compare counts.
  const auto& row = topic_term_.at(static_cast<std::size_t>(topic));
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return row[a] > row[b]; });
  n = std::min(n, order.size());
  std::vector<std::string> words;
  words.reserve(n);
  for (std::size_t i = 0; i < n; ++i) words.push_back(vocabulary_[order[i]]);
  return words;
}

LdaModel lda_gibbs(const std::vector<std::vector<std::string>>& docs, const LdaParams& params) {
  if (params.topics < 1) throw Error(ErrorKind::kInvalidParams, "LDA needs K >= 1");
  if (!(params.alpha > 0.0) || !(params.beta > 0.0)) {
    throw Error(ErrorKind::kInvalidParams, "LDA priors must be positive");
  }
  if (params.iterations < 1) throw Error(ErrorKind::kInvalidParams, "LDA needs iterations >= 1");

  LdaModel model;
  model.topics_ = params.topics;
  model.beta_ = params.beta;
  for (const auto& doc : docs) model.vocabulary_.insert(model.vocabulary_.end(), doc.begin(), doc.end());
  std::sort(model.vocabulary_.begin(), model.vocabulary_.end());
  model.vocabulary_.erase(std::unique(model.vocabulary_.begin(), model.vocabulary_.end()),
                          model.vocabulary_.end());
  if (model.vocabulary_.empty()) throw Error(ErrorKind::kEmptyCorpus, "LDA vocabulary is empty");

  const std::size_t k_topics = static_cast<std::size_t>(params.topics);
  const std::size_t vocab = model.vocabulary_.size();
  const double v_beta = static_cast<double>(vocab) * params.beta;

  std::vector<std::vector<std::size_t>> words(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    words[d].reserve(docs[d].size());
    for (const auto& term : docs[d]) words[d].push_back(*model.term_index(term));
  }

  model.topic_term_.assign(k_topics, std::vector<std::uint32_t>(vocab, 0));
  model.topic_total_.assign(k_topics, 0);
  std::vector<std::vector<std::uint32_t>> doc_topic(docs.size(),
                                                    std::vector<std::uint32_t>(k_topics, 0));
  model.assignments_.resize(docs.size());

  std::mt19937_64 rng(params.seed);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    model.assignments_[d].resize(words[d].size());
    for (std::size_t i = 0; i < words[d].size(); ++i) {
      auto z = static_cast<std::size_t>(unit_interval(rng) * static_cast<double>(k_topics));
      z = std::min(z, k_topics - 1);
      model.assignments_[d][i] = static_cast<int>(z);
      ++doc_topic[d][z];
      ++model.topic_term_[z][words[d][i]];
      ++model.topic_total_[z];
    }
  }

  std::vector<double> cumulative(k_topics);
  for (int iter = 0; iter < params.iterations; ++iter) {
    for (std::size_t d = 0; d < docs.size(); ++d) {
      for (std::size_t i = 0; i < words[d].size(); ++i) {
        const std::size_t w = words[d][i];
        const auto old = static_cast<std::size_t>(model.assignments_[d][i]);
        --doc_topic[d][old];
        --model.topic_term_[old][w];
        --model.topic_total_[old];

        double total = 0.0;
        for (std::size_t k = 0; k < k_topics; ++k) {
          total += (doc_topic[d][k] + params.alpha) * (model.topic_term_[k][w] + params.beta) /
                   (static_cast<double>(model.topic_total_[k]) + v_beta);
          cumulative[k] = total;
        }
        const double u = unit_interval(rng) * total;
        std::size_t z = static_cast<std::size_t>(
            std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        z = std::min(z, k_topics - 1);

        model.assignments_[d][i] = static_cast<int>(z);
        ++doc_topic[d][z];
        ++model.topic_term_[z][w];
        ++model.topic_total_[z];
      }
    }
  }
  return model;
}

std::vector<KeywordScore> score_keywords(const std::map<std::string, double>& tfidf,
                                         const LdaModel& model) {
  std::vector<KeywordScore> scores;
  scores.reserve(model.vocabulary().size());
  for (std::size_t t = 0; t < model.vocabulary().size(); ++t) {
    KeywordScore score;
    score.term = model.vocabulary()[t];
    auto it = tfidf.find(score.term);
    score.tfidf = it == tfidf.end() ? 0.0 : it->second;
    int best = 0;
    for (int k = 1; k < model.topics(); ++k) {
      if (model.phi(k, t) > model.phi(best, t)) best = k;
    }
    score.topic_id = best;
    score.topic_weight = model.phi(best, t);
    scores.push_back(std::move(score));
  }
  return scores;
}

std::vector<std::string> utterance_terms(const Utterance& utterance, const CurationConfig& config,
                                         const EntityCatalog& catalog) {
  std::vector<std::string> terms = tokenize_dialogue(utterance.text, config.stopwords);
  for (auto& term : terms) term = catalog.canonical_keyword_term(term);
  return terms;
}

std::vector<std::vector<std::string>> scene_documents(const std::vector<Scene>& scenes,
                                                      const CurationConfig& config,
                                                      const EntityCatalog& catalog) {
  std::vector<std::vector<std::string>> docs;
  docs.reserve(scenes.size());
  for (const Scene& scene : scenes) {
    std::vector<std::string> doc;
    for (const SceneBlock& block : scene.blocks) {
      if (const auto* u = std::get_if<Utterance>(&block)) {
        auto terms = utterance_terms(*u, config, catalog);
        doc.insert(doc.end(), terms.begin(), terms.end());
      }
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<std::string> top_keyword_terms(const LdaModel& model, const CurationConfig& config) {
  std::set<std::string> selected;
  const auto n = static_cast<std::size_t>(std::max(config.keyword_params.top_n, 0));
  for (int k = 0; k < model.topics(); ++k) {
    for (const std::string& term : model.top_words(k, n)) {
      if (!is_blocklisted(term, config)) selected.insert(term);
    }
  }
  return {selected.begin(), selected.end()};
}

KeywordIndex select_keywords(const std::vector<KeywordScore>& scores, const LdaModel& model,
                             const CurationConfig& config, const std::vector<Scene>& scenes,
                             EntityCatalog& catalog) {
  std::set<std::string> scored;
  for (const KeywordScore& s : scores) scored.insert(s.term);

  KeywordIndex index;
  std::vector<std::string> terms;
  for (const std::string& term : top_keyword_terms(model, config)) {
    if (scored.count(term) == 0) continue;
    catalog.add_keyword(term);
    terms.push_back(term);
  }
  if (terms.empty()) return index;

  for (const Scene& scene : scenes) {
    for (const SceneBlock& block : scene.blocks) {
      const auto* u = std::get_if<Utterance>(&block);
      if (u == nullptr) continue;
      std::set<std::string> present;
      for (auto& t : utterance_terms(*u, config, catalog)) present.insert(std::move(t));
      for (const std::string& term : present) {
        auto id = catalog.find_keyword(term);
        if (!id) continue;
        index.utterances[*id].push_back(UtteranceRef{scene.index, u->block_index});
        catalog.record_occurrence(*id, scene.index);
      }
    }
  }
  return index;
}

}  // namespace screenplaynet
