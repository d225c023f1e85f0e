#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "screenplaynet/curation.hpp"
#include "screenplaynet/script_parser.hpp"

namespace screenplaynet {

struct EntityId {
  std::uint32_t value = 0;
  friend auto operator<=>(const EntityId&, const EntityId&) = default;
};

struct Entity {
  EntityId id;
  std::string canonical_name;
  EntityKind kind = EntityKind::kCharacter;
};

// Trim, uppercase and collapse internal whitespace.
std::string normalize_surface(std::string_view surface);

// Canonical characters, locations and keywords.
//
// Character and location surface forms share one alias map, so a surface
// form resolves to at most one entity. Keyword terms are lowercase dialogue
// tokens and live in their own term map: "luke" the keyword and LUKE the
// speaker are distinct nodes.
class EntityCatalog {
 public:
  // Throws Error(kConfigConflict) when the canonical name already exists
  // for this kind.
  EntityId add_entity(std::string_view canonical_name, EntityKind kind);

  // Maps a surface form to `id`. Re-adding the same pair is a no-op; mapping
  // it to a different entity throws Error(kConfigConflict).
  void add_alias(std::string_view surface, EntityId id);

  // Keyword alias groups: every alias term is rewritten to `canonical_term`
  // before keyword scoring.
  void add_keyword_alias(std::string_view term, std::string_view canonical_term);
  std::string canonical_keyword_term(std::string_view term) const;

  std::optional<EntityId> lookup(std::string_view surface) const;
  std::optional<EntityId> find_keyword(std::string_view term) const;
  EntityId add_keyword(std::string_view term);

  const Entity& entity(EntityId id) const;
  const std::vector<Entity>& entities() const { return entities_; }
  std::vector<EntityId> ids_of_kind(EntityKind kind) const;
  bool contains(EntityId id) const { return id.value < entities_.size(); }

  const std::map<std::string, EntityId>& alias_map() const { return alias_map_; }

  void record_occurrence(EntityId id, std::size_t scene_index);
  const std::set<std::size_t>& occurrences(EntityId id) const;
  const std::map<EntityId, std::set<std::size_t>>& scene_occurrences() const {
    return scene_occurrences_;
  }

  // Uppercase description mentions that matched no curated entity; kept for
  // curation review only.
  std::set<std::string> unresolved_mentions;

 private:
  std::vector<Entity> entities_;
  std::map<std::string, EntityId> alias_map_;
  std::map<std::string, std::string> keyword_aliases_;
  std::map<std::string, EntityId> keyword_terms_;
  std::map<std::pair<EntityKind, std::string>, EntityId> canonical_index_;
  std::map<EntityId, std::set<std::size_t>> scene_occurrences_;
};

std::optional<EntityId> resolve_alias(std::string_view surface, const EntityCatalog& catalog);

// Maximal runs of all-uppercase words in a description ("LUKE SKYWALKER").
std::vector<std::string> uppercase_mentions(std::string_view description);

// Registers alias groups, speakers and scene locations, then records
// description mentions of known characters. Throws Error(kConfigConflict)
// when one surface form belongs to two alias groups.
EntityCatalog harvest_entities(const std::vector<Scene>& scenes, const CurationConfig& config);

bool is_blocklisted(std::string_view surface, const CurationConfig& config);

// ---- keywords ---------------------------------------------------------------

std::vector<std::string> tokenize_dialogue(std::string_view utterance_text,
                                           const std::set<std::string>& stopwords);

// score(t) = max_d tf(t, d) * ln(N / df(t)). Throws Error(kEmptyCorpus)
// when every document is empty.
std::map<std::string, double> tfidf_scores(const std::vector<std::vector<std::string>>& docs);

class LdaModel {
 public:
  int topics() const { return topics_; }
  const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  // assignments()[d][i] is the topic of token i of document d.
  const std::vector<std::vector<int>>& assignments() const { return assignments_; }

  // (count(k, t) + beta) / (count(k) + V * beta)
  double phi(int topic, std::size_t term_index) const;
  std::optional<std::size_t> term_index(std::string_view term) const;

  // Highest-phi terms of a topic; ties by term. n is clamped to V.
  std::vector<std::string> top_words(int topic, std::size_t n) const;

 private:
  friend LdaModel lda_gibbs(const std::vector<std::vector<std::string>>&, const LdaParams&);

  int topics_ = 0;
  double beta_ = 0.0;
  std::vector<std::string> vocabulary_;
  std::vector<std::vector<int>> assignments_;
  std::vector<std::vector<std::uint32_t>> topic_term_;  // [topic][term]
  std::vector<std::uint64_t> topic_total_;
};

// Collapsed Gibbs sampling with symmetric priors. Bit-reproducible for a
// fixed seed. Throws Error(kInvalidParams) for K < 1, non-positive priors or
// iterations < 1, and Error(kEmptyCorpus) for an empty vocabulary.
LdaModel lda_gibbs(const std::vector<std::vector<std::string>>& docs, const LdaParams& params);

struct KeywordScore {
  std::string term;
  double tfidf = 0.0;
  std::optional<int> topic_id;
  std::optional<double> topic_weight;
};

// One score per vocabulary term, sorted by term. The topic is the one with
// the highest phi for that term.
std::vector<KeywordScore> score_keywords(const std::map<std::string, double>& tfidf,
                                         const LdaModel& model);

struct UtteranceRef {
  std::size_t scene_index = 0;
  std::size_t block_index = 0;
  friend auto operator<=>(const UtteranceRef&, const UtteranceRef&) = default;
};

struct KeywordIndex {
  std::map<EntityId, std::vector<UtteranceRef>> utterances;
};

// Tokens of one utterance after stopword filtering and keyword aliasing.
std::vector<std::string> utterance_terms(const Utterance& utterance, const CurationConfig& config,
                                         const EntityCatalog& catalog);

// One document per scene holding the terms of all its utterances.
std::vector<std::vector<std::string>> scene_documents(const std::vector<Scene>& scenes,
                                                      const CurationConfig& config,
                                                      const EntityCatalog& catalog);

// Union of the top_n LDA words of every topic minus the blocklist, sorted.
std::vector<std::string> top_keyword_terms(const LdaModel& model, const CurationConfig& config);

// Registers the selected terms as Keyword entities, records their scene
// occurrences and returns the term -> utterance index.
KeywordIndex select_keywords(const std::vector<KeywordScore>& scores, const LdaModel& model,
                             const CurationConfig& config, const std::vector<Scene>& scenes,
                             EntityCatalog& catalog);

}  // namespace screenplaynet
