#include <algorithm>

#include "screenplaynet/entity_extraction.hpp"
#include "screenplaynet/error.hpp"
#include "text_util.hpp"

namespace screenplaynet {

namespace {

bool is_edge_punct(char c) {
  return c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?' ||
         c == '"' || c == '(' || c == ')' || c == '[' || c == ']' || c == '*' ||
         c == '`' || c == '-' || c == '\'';
}

int letter_count(std::string_view s) {
  return static_cast<int>(std::count_if(s.begin(), s.end(), text::is_alpha));
}

}  // namespace

std::string normalize_surface(std::string_view surface) {
  return text::upper(text::collapse_whitespace(surface));
}

EntityId EntityCatalog::add_entity(std::string_view canonical_name, EntityKind kind) {
  std::string name = kind == EntityKind::kKeyword ? text::lower(text::collapse_whitespace(canonical_name))
                                                  : normalize_surface(canonical_name);
  auto key = std::make_pair(kind, name);
  if (canonical_index_.count(key) > 0) {
    throw Error(ErrorKind::kConfigConflict, "duplicate " + std::string(entity_kind_name(kind)) +
                                                " '" + name + "'");
  }
  EntityId id{static_cast<std::uint32_t>(entities_.size())};
  entities_.push_back(Entity{id, name, kind});
  canonical_index_.emplace(std::move(key), id);
  return id;
}

void EntityCatalog::add_alias(std::string_view surface, EntityId id) {
  std::string key = normalize_surface(surface);
  if (key.empty()) return;
  auto [it, inserted] = alias_map_.emplace(key, id);
  if (!inserted && it->second != id) {
    throw Error(ErrorKind::kConfigConflict,
                "surface form '" + key + "' maps to both '" + entity(it->second).canonical_name +
                    "' and '" + entity(id).canonical_name + "'");
  }
}

void EntityCatalog::add_keyword_alias(std::string_view term, std::string_view canonical_term) {
  std::string key = text::lower(text::collapse_whitespace(term));
  std::string target = text::lower(text::collapse_whitespace(canonical_term));
  auto [it, inserted] = keyword_aliases_.emplace(key, target);
  if (!inserted && it->second != target) {
    throw Error(ErrorKind::kConfigConflict, "keyword '" + key + "' maps to both '" + it->second +
                                                "' and '" + target + "'");
  }
}

std::string EntityCatalog::canonical_keyword_term(std::string_view term) const {
  std::string key = text::lower(term);
  auto it = keyword_aliases_.find(key);
  return it == keyword_aliases_.end() ? key : it->second;
}

std::optional<EntityId> EntityCatalog::lookup(std::string_view surface) const {
  auto it = alias_map_.find(normalize_surface(surface));
  if (it == alias_map_.end()) return std::nullopt;
  return it->second;
}

std::optional<EntityId> EntityCatalog::find_keyword(std::string_view term) const {
  auto it = keyword_terms_.find(text::lower(term));
  if (it == keyword_terms_.end()) return std::nullopt;
  return it->second;
}

EntityId EntityCatalog::add_keyword(std::string_view term) {
  if (auto existing = find_keyword(term)) return *existing;
  EntityId id = add_entity(term, EntityKind::kKeyword);
  keyword_terms_.emplace(text::lower(term), id);
  return id;
}

const Entity& EntityCatalog::entity(EntityId id) const {
  if (!contains(id)) {
    throw Error(ErrorKind::kDanglingReference, "unknown entity id " + std::to_string(id.value));
  }
  return entities_[id.value];
}

std::vector<EntityId> EntityCatalog::ids_of_kind(EntityKind kind) const {
  std::vector<EntityId> ids;
  for (const Entity& e : entities_) {
    if (e.kind == kind) ids.push_back(e.id);
  }
  return ids;
}

void EntityCatalog::record_occurrence(EntityId id, std::size_t scene_index) {
  if (!contains(id)) {
    throw Error(ErrorKind::kDanglingReference, "unknown entity id " + std::to_string(id.value));
  }
  scene_occurrences_[id].insert(scene_index);
}

const std::set<std::size_t>& EntityCatalog::occurrences(EntityId id) const {
  static const std::set<std::size_t> kNone;
  auto it = scene_occurrences_.find(id);
  return it == scene_occurrences_.end() ? kNone : it->second;
}

std::optional<EntityId> resolve_alias(std::string_view surface, const EntityCatalog& catalog) {
  return catalog.lookup(surface);
}

bool is_blocklisted(std::string_view surface, const CurationConfig& config) {
  std::string key = normalize_surface(surface);
  return std::any_of(config.blocklist.begin(), config.blocklist.end(),
                     [&](const std::string& b) { return normalize_surface(b) == key; });
}

std::vector<std::string> uppercase_mentions(std::string_view description) {
  std::vector<std::string> mentions;
  std::vector<std::string> run;
  auto flush = [&] {
    if (!run.empty()) mentions.push_back(text::join(run, " "));
    run.clear();
  };
  for (const std::string& raw : text::split(text::collapse_whitespace(description), ' ')) {
    std::string_view token = raw;
    bool breaks_after = false;
    while (!token.empty() && is_edge_punct(token.front())) {
      flush();
      token.remove_prefix(1);
    }
    while (!token.empty() && is_edge_punct(token.back())) {
      breaks_after = true;
      token.remove_suffix(1);
    }
    std::string word(token);
    // Possessives: "LUKE'S" -> "LUKE".
    for (std::string_view suffix : {"'S", "’S"}) {
      if (word.size() > suffix.size() &&
          word.compare(word.size() - suffix.size(), suffix.size(), suffix) == 0) {
        word.resize(word.size() - suffix.size());
        breaks_after = true;
      }
    }
    if (letter_count(word) >= 2 && text::is_all_uppercase(word)) {
      run.push_back(word);
    } else {
      flush();
    }
    if (breaks_after) flush();
  }
  flush();
  return mentions;
}

EntityCatalog harvest_entities(const std::vector<Scene>& scenes, const CurationConfig& config) {
  EntityCatalog catalog;

  for (const AliasGroup& group : config.alias_groups) {
    if (group.kind == EntityKind::kKeyword) {
      catalog.add_keyword_alias(group.canonical, group.canonical);
      for (const std::string& alias : group.aliases) {
        catalog.add_keyword_alias(alias, group.canonical);
      }
      continue;
    }
    EntityId id = catalog.add_entity(group.canonical, group.kind);
    catalog.add_alias(group.canonical, id);
    for (const std::string& alias : group.aliases) catalog.add_alias(alias, id);
  }

  auto resolve_or_register = [&](std::string_view surface,
                                 EntityKind kind) -> std::optional<EntityId> {
    if (is_blocklisted(surface, config)) return std::nullopt;
    if (auto id = catalog.lookup(surface)) {
      if (catalog.entity(*id).kind != kind) return std::nullopt;
      return id;
    }
    EntityId id = catalog.add_entity(surface, kind);
    catalog.add_alias(surface, id);
    return id;
  };

  // Pass 1: settings and speakers create entities.
  for (const Scene& scene : scenes) {
    if (auto loc = resolve_or_register(scene.header.location_raw, EntityKind::kLocation)) {
      catalog.record_occurrence(*loc, scene.index);
    }
    for (const SceneBlock& block : scene.blocks) {
      const auto* utterance = std::get_if<Utterance>(&block);
      if (utterance == nullptr || utterance->speaker_raw.empty()) continue;
      if (auto who = resolve_or_register(utterance->speaker_raw, EntityKind::kCharacter)) {
        catalog.record_occurrence(*who, scene.index);
      }
    }
  }

  // Pass 2: uppercase description mentions only attach to known characters.
  for (const Scene& scene : scenes) {
    for (const SceneBlock& block : scene.blocks) {
      const auto* description = std::get_if<DescriptionBlock>(&block);
      if (description == nullptr) continue;
      for (const std::string& mention : uppercase_mentions(description->text)) {
        if (is_blocklisted(mention, config)) continue;
        auto as_character = [&](std::string_view surface) -> std::optional<EntityId> {
          auto id = catalog.lookup(surface);
          if (id && catalog.entity(*id).kind == EntityKind::kCharacter) return id;
          return std::nullopt;
        };
        if (auto id = as_character(mention)) {
          catalog.record_occurrence(*id, scene.index);
          continue;
        }
        bool any = false;
        for (const std::string& word : text::split(mention, ' ')) {
          if (is_blocklisted(word, config)) continue;
          if (auto id = as_character(word)) {
            catalog.record_occurrence(*id, scene.index);
            any = true;
          }
        }
        if (!any) catalog.unresolved_mentions.insert(mention);
      }
    }
  }
  return catalog;
}

}  // namespace screenplaynet
