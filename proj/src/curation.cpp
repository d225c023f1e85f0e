#include "screenplaynet/curation.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "screenplaynet/error.hpp"
#include "text_util.hpp"

namespace screenplaynet {

namespace {

enum class Section { kNone, kAliases, kBlocklist, kStopwords, kKeywords };

[[noreturn]] void syntax_error(std::size_t line_no, const std::string& what) {
  throw Error(ErrorKind::kConfigSyntax,
              "curation line " + std::to_string(line_no) + ": " + what);
}

EntityKind parse_kind(std::string_view raw, std::size_t line_no) {
  std::string kind = text::lower(text::trim(raw));
  if (kind == "character" || kind == "c") return EntityKind::kCharacter;
  if (kind == "location" || kind == "l") return EntityKind::kLocation;
  if (kind == "keyword" || kind == "k") return EntityKind::kKeyword;
  syntax_error(line_no, "unknown entity kind '" + std::string(raw) + "'");
}

template <typename T>
T parse_number(std::string_view raw, std::size_t line_no) {
  std::string_view v = text::trim(raw);
  T value{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    syntax_error(line_no, "bad number '" + std::string(v) + "'");
  }
  return value;
}

bool parse_bool(std::string_view raw, std::size_t line_no) {
  std::string v = text::lower(text::trim(raw));
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  syntax_error(line_no, "bad boolean '" + v + "'");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::string_view entity_kind_name(EntityKind kind) {
  switch (kind) {
    case EntityKind::kCharacter: return "character";
    case EntityKind::kLocation: return "location";
    case EntityKind::kKeyword: return "keyword";
  }
  return "character";
}

char layer_letter(EntityKind kind) {
  switch (kind) {
    case EntityKind::kCharacter: return 'C';
    case EntityKind::kLocation: return 'L';
    case EntityKind::kKeyword: return 'K';
  }
  return 'C';
}

void CurationConfig::validate() const {
  const LdaParams& lda = keyword_params.lda;
  if (keyword_params.top_n < 0) {
    throw Error(ErrorKind::kInvalidParams, "top_n must be non-negative");
  }
  if (lda.topics < 1) throw Error(ErrorKind::kInvalidParams, "lda.K must be >= 1");
  if (!(lda.alpha > 0.0) || !(lda.beta > 0.0)) {
    throw Error(ErrorKind::kInvalidParams, "lda.alpha and lda.beta must be > 0");
  }
  if (lda.iterations < 1) {
    throw Error(ErrorKind::kInvalidParams, "lda.iterations must be >= 1");
  }
  for (const AliasGroup& group : alias_groups) {
    if (group.aliases.empty()) {
      throw Error(ErrorKind::kInvalidParams, "alias group '" + group.canonical + "' is empty");
    }
  }
}

CurationConfig parse_curation(std::string_view text_in, const std::filesystem::path& base_dir) {
  CurationConfig config;
  bool alpha_set = false;
  bool use_defaults = true;
  std::vector<std::filesystem::path> stopword_files;

  Section section = Section::kNone;
  std::size_t line_no = 0;
  for (std::string_view raw : text::split_lines(text_in)) {
    ++line_no;
    std::string_view line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') syntax_error(line_no, "unterminated section header");
      std::string name = text::lower(text::trim(line.substr(1, line.size() - 2)));
      if (name == "aliases") section = Section::kAliases;
      else if (name == "blocklist") section = Section::kBlocklist;
      else if (name == "stopwords") section = Section::kStopwords;
      else if (name == "keywords") section = Section::kKeywords;
      else syntax_error(line_no, "unknown section [" + name + "]");
      continue;
    }

    switch (section) {
      case Section::kNone:
        syntax_error(line_no, "entry outside of a section");
      case Section::kAliases: {
        std::size_t eq = line.find('=');
        std::size_t bar = line.find('|');
        if (eq == std::string_view::npos || bar == std::string_view::npos || bar > eq) {
          syntax_error(line_no, "expected 'CANONICAL|kind = alias; ...'");
        }
        AliasGroup group;
        group.canonical = text::collapse_whitespace(line.substr(0, bar));
        group.kind = parse_kind(line.substr(bar + 1, eq - bar - 1), line_no);
        for (const std::string& alias : text::split(line.substr(eq + 1), ';')) {
          std::string cleaned = text::collapse_whitespace(alias);
          if (!cleaned.empty()) group.aliases.push_back(cleaned);
        }
        if (group.canonical.empty()) syntax_error(line_no, "empty canonical name");
        if (group.aliases.empty()) syntax_error(line_no, "alias list is empty");
        config.alias_groups.push_back(std::move(group));
        break;
      }
      case Section::kBlocklist:
        config.blocklist.push_back(text::collapse_whitespace(line));
        break;
      case Section::kStopwords:
        for (const std::string& token : text::split(text::collapse_whitespace(line), ' ')) {
          if (!token.empty()) config.stopwords.insert(text::lower(token));
        }
        break;
      case Section::kKeywords: {
        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) syntax_error(line_no, "expected 'key = value'");
        std::string key = text::lower(text::trim(line.substr(0, eq)));
        std::string_view value = text::trim(line.substr(eq + 1));
        LdaParams& lda = config.keyword_params.lda;
        if (key == "top_n") {
          config.keyword_params.top_n = parse_number<int>(value, line_no);
        } else if (key == "lda.k" || key == "lda.topics") {
          lda.topics = parse_number<int>(value, line_no);
        } else if (key == "lda.alpha") {
          lda.alpha = parse_number<double>(value, line_no);
          alpha_set = true;
        } else if (key == "lda.beta") {
          lda.beta = parse_number<double>(value, line_no);
        } else if (key == "lda.iterations") {
          lda.iterations = parse_number<int>(value, line_no);
        } else if (key == "lda.seed") {
          lda.seed = parse_number<std::uint64_t>(value, line_no);
        } else if (key == "stopwords_file") {
          std::filesystem::path p{std::string(value)};
          stopword_files.push_back(p.is_relative() ? base_dir / p : p);
        } else if (key == "default_stopwords") {
          use_defaults = parse_bool(value, line_no);
        } else {
          syntax_error(line_no, "unknown key '" + key + "'");
        }
        break;
      }
    }
  }

  if (!alpha_set && config.keyword_params.lda.topics >= 1) {
    config.keyword_params.lda.alpha = 50.0 / config.keyword_params.lda.topics;
  }
  if (use_defaults) config.stopwords.insert(default_stopwords().begin(), default_stopwords().end());
  for (const auto& file : stopword_files) {
    auto words = load_stopword_file(file);
    config.stopwords.insert(words.begin(), words.end());
  }
  config.validate();
  return config;
}

CurationConfig load_curation(const std::filesystem::path& path) {
  return parse_curation(read_file(path), path.parent_path());
}

CurationConfig default_curation() {
  CurationConfig config;
  config.stopwords = default_stopwords();
  return config;
}

std::set<std::string> load_stopword_file(const std::filesystem::path& path) {
  std::set<std::string> words;
  const std::string content = read_file(path);
  for (std::string_view raw : text::split_lines(content)) {
    std::string_view line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    for (const std::string& token : text::split(text::collapse_whitespace(line), ' ')) {
      if (!token.empty()) words.insert(text::lower(token));
    }
  }
  return words;
}

const std::set<std::string>& default_stopwords() {
  static const std::set<std::string> kWords = {
      "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you",
      "your", "yours", "yourself", "yourselves", "he", "him", "his", "himself",
      "she", "her", "hers", "herself", "it", "its", "itself", "they", "them",
      "their", "theirs", "themselves", "what", "which", "who", "whom", "this",
      "that", "these", "those", "am", "is", "are", "was", "were", "be", "been",
      "being", "have", "has", "had", "having", "do", "does", "did", "doing",
      "a", "an", "the", "and", "but", "if", "or", "because", "as", "until",
      "while", "of", "at", "by", "for", "with", "about", "against", "between",
      "into", "through", "during", "before", "after", "above", "below", "to",
      "from", "up", "down", "in", "out", "on", "off", "over", "under", "again",
      "further", "then", "once", "here", "there", "when", "where", "why", "how",
      "all", "any", "both", "each", "few", "more", "most", "other", "some",
      "such", "no", "nor", "not", "only", "own", "same", "so", "than", "too",
      "very", "can", "will", "just", "don", "should", "now", "ain", "aren",
      "couldn", "didn", "doesn", "hadn", "hasn", "haven", "isn", "mightn",
      "mustn", "needn", "shan", "shouldn", "wasn", "weren", "won", "wouldn"};
  return kWords;
}

}  // namespace screenplaynet
