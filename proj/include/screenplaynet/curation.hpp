#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace screenplaynet {

enum class EntityKind { kCharacter, kLocation, kKeyword };

std::string_view entity_kind_name(EntityKind kind);
// Layer letter used in exports: C, L or K.
char layer_letter(EntityKind kind);

struct LdaParams {
  int topics = 10;
  double alpha = 5.0;  // 50 / topics unless configured
  double beta = 0.01;
  int iterations = 1000;
  std::uint64_t seed = 42;
};

struct KeywordParams {
  int top_n = 10;
  LdaParams lda;
};

struct AliasGroup {
  std::string canonical;
  EntityKind kind = EntityKind::kCharacter;
  std::vector<std::string> aliases;
};

struct CurationConfig {
  std::vector<AliasGroup> alias_groups;
  std::vector<std::string> blocklist;
  std::set<std::string> stopwords;
  KeywordParams keyword_params;

  // Throws Error(kInvalidParams) when the numeric parameters are out of range.
  void validate() const;
};

// Sections [aliases], [blocklist], [stopwords], [keywords]. Alias lines read
// `CANONICAL|kind = alias1; alias2`. Relative `stopwords_file` paths resolve
// against `base_dir`. The built-in English stopword list is always included
// unless `default_stopwords = false`.
CurationConfig parse_curation(std::string_view text,
                              const std::filesystem::path& base_dir = {});
CurationConfig load_curation(const std::filesystem::path& path);

// Configuration used when no curation file is given.
CurationConfig default_curation();

// Whitespace-separated tokens, usually one per line; '#' starts a comment.
std::set<std::string> load_stopword_file(const std::filesystem::path& path);

const std::set<std::string>& default_stopwords();

}  // namespace screenplaynet
