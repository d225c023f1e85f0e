#include "screenplaynet/script_parser.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "screenplaynet/error.hpp"
#include "text_util.hpp"

namespace screenplaynet {

namespace {

using text::is_alpha;
using text::is_digit;
using text::is_space;
using text::trim;

// Words that mark a " - <suffix>" heading tail as a time of day rather than
// a sub-location ("DEATH STAR - CORRIDOR" keeps its tail).
constexpr std::array<std::string_view, 22> kTimeWords = {
    "DAY",      "NIGHT",    "MORNING", "EVENING",  "AFTERNOON", "DAWN",
    "DUSK",     "SUNSET",   "SUNRISE", "TWILIGHT", "NOON",      "MIDNIGHT",
    "LATER",    "CONTINUOUS", "MOMENTS", "SAME",   "DAYTIME",   "NIGHTTIME",
    "PRE-DAWN", "CONT'D",   "CONTD",   "SIMULTANEOUS"};

bool is_time_suffix(std::string_view suffix) {
  std::string words = text::upper(suffix);
  for (char& c : words) {
    if (c == '(' || c == ')' || c == ',' || c == '.' || c == '/') c = ' ';
  }
  for (const std::string& word : text::split(text::collapse_whitespace(words), ' ')) {
    if (std::find(kTimeWords.begin(), kTimeWords.end(), word) != kTimeWords.end()) {
      return true;
    }
  }
  return false;
}

std::size_t read_word(std::string_view s, std::size_t pos) {
  while (pos < s.size() && is_alpha(s[pos])) ++pos;
  return pos;
}

struct MarkerMatch {
  Interiority kind = Interiority::kUnknown;
  std::size_t end = 0;  // first position after the marker
  bool numbered = false;
  std::string scene_number;
};

// Optional scene number, then INT / EXT / INT./EXT. / EXT./INT. / I/E with
// optional trailing periods.
std::optional<MarkerMatch> match_marker(std::string_view s) {
  MarkerMatch m;
  std::size_t pos = 0;
  if (pos < s.size() && is_digit(s[pos])) {
    std::size_t p = pos;
    while (p < s.size() && is_digit(s[p])) ++p;
    std::size_t letters = 0;
    while (p < s.size() && is_alpha(s[p]) && letters < 2) {
      ++p;
      ++letters;
    }
    if (p < s.size() && s[p] == '.') ++p;
    if (p < s.size() && is_space(s[p])) {
      m.numbered = true;
      m.scene_number = std::string(s.substr(0, p));
      while (!m.scene_number.empty() && m.scene_number.back() == '.') {
        m.scene_number.pop_back();
      }
      while (p < s.size() && is_space(s[p])) ++p;
      pos = p;
    }
  }

  auto word_at = [&](std::size_t p) {
    return text::upper(s.substr(p, read_word(s, p) - p));
  };
  auto skip_dot = [&](std::size_t p) {
    return (p < s.size() && s[p] == '.') ? p + 1 : p;
  };

  std::string first = word_at(pos);
  std::size_t p = pos + first.size();
  if (first == "INT" || first == "EXT") {
    m.kind = first == "INT" ? Interiority::kInterior : Interiority::kExterior;
    p = skip_dot(p);
    std::size_t q = p;
    while (q < s.size() && s[q] == ' ') ++q;
    if (q < s.size() && s[q] == '/') {
      ++q;
      while (q < s.size() && s[q] == ' ') ++q;
      std::string second = word_at(q);
      if ((first == "INT" && second == "EXT") || (first == "EXT" && second == "INT")) {
        m.kind = Interiority::kBoth;
        p = skip_dot(q + second.size());
      } else {
        return std::nullopt;
      }
    }
  } else if (first == "I" && p < s.size() && s[p] == '/') {
    std::string second = word_at(p + 1);
    if (second != "E") return std::nullopt;
    m.kind = Interiority::kBoth;
    p = skip_dot(p + 2);
  } else {
    return std::nullopt;
  }

  if (p < s.size()) {
    char c = s[p];
    bool boundary = is_space(c) || c == '-' || c == ':' || c == ',' ||
                    (p > 0 && s[p - 1] == '.');
    if (!boundary) return std::nullopt;
  }
  m.end = p;
  return m;
}

std::string_view strip_leading_separators(std::string_view s) {
  std::size_t b = 0;
  while (b < s.size() && (is_space(s[b]) || s[b] == '.' || s[b] == '-' ||
                          s[b] == ':' || s[b] == ',')) {
    ++b;
  }
  return s.substr(b);
}

bool is_page_marker(std::string_view t) {
  std::string u = text::upper(t);
  if (u == "(CONTINUED)" || u == "CONTINUED" || u == "CONTINUED:" ||
      u == "(MORE)" || u == "(CONT'D)" || u == "CONT'D" ||
      u == "(CONTINUED:)") {
    return true;
  }
  // Bare page or scene numbers: "12", "12.", "12A."
  std::size_t i = 0;
  while (i < u.size() && is_digit(u[i])) ++i;
  if (i == 0) return false;
  std::size_t letters = 0;
  while (i < u.size() && text::is_upper(u[i]) && letters < 2) {
    ++i;
    ++letters;
  }
  if (i < u.size() && u[i] == '.') ++i;
  return i == u.size();
}

bool is_transition(std::string_view t) {
  if (is_page_marker(t)) return true;
  if (!text::is_all_uppercase(t)) return false;
  std::string u = text::collapse_whitespace(t);
  auto ends_with = [&](std::string_view suffix) {
    return u.size() >= suffix.size() &&
           u.compare(u.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with(" TO:") || ends_with(" TO.") || u == "THE END" || u == "THE END.") {
    return true;
  }
  constexpr std::array<std::string_view, 9> kPrefixes = {
      "FADE IN",   "FADE OUT",  "FADE TO",  "CUT TO",   "DISSOLVE",
      "SMASH CUT", "MATCH CUT", "JUMP CUT", "WIPE TO"};
  for (std::string_view prefix : kPrefixes) {
    if (u.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

int word_count(std::string_view s) {
  int words = 0;
  bool in_word = false;
  for (char c : s) {
    if (is_space(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++words;
    }
  }
  return words;
}

constexpr int kMaxCueWords = 5;

bool looks_like_cue(std::string_view trimmed) {
  if (!text::is_all_uppercase(trimmed) || is_transition(trimmed)) return false;
  if (is_heading_line(trimmed)) return false;
  std::string name = clean_cue(trimmed);
  if (name.empty() || !text::is_all_uppercase(name)) return false;
  return word_count(name) <= kMaxCueWords;
}

bool is_blank(const ScriptLine& line) { return trim(line.text).empty(); }

int indent_of(const ScriptLine& line) { return text::leading_indent(line.text); }

std::vector<ScriptLine> to_script_lines(std::string_view raw_text) {
  std::string normalized = normalize_line_endings(raw_text);
  std::vector<ScriptLine> lines;
  std::size_t number = 0;
  for (std::string_view raw : text::split_lines(normalized)) {
    ++number;
    std::string expanded = text::expand_tabs(raw);
    while (!expanded.empty() && is_space(expanded.back())) expanded.pop_back();
    lines.push_back(ScriptLine{number, std::move(expanded)});
  }
  return lines;
}

}  // namespace

std::string_view interiority_name(Interiority value) {
  switch (value) {
    case Interiority::kInterior: return "Interior";
    case Interiority::kExterior: return "Exterior";
    case Interiority::kBoth: return "Both";
    case Interiority::kUnknown: return "Unknown";
  }
  return "Unknown";
}

std::string SettingHeader::render() const {
  std::string out;
  switch (interiority) {
    case Interiority::kInterior: out = "INT. "; break;
    case Interiority::kExterior: out = "EXT. "; break;
    case Interiority::kBoth: out = "INT./EXT. "; break;
    case Interiority::kUnknown: break;
  }
  out += location_raw;
  if (time_of_day) out += " - " + *time_of_day;
  return out;
}

std::string_view line_label_name(LineLabel label) {
  switch (label) {
    case LineLabel::kBlank: return "blank";
    case LineLabel::kHeading: return "heading";
    case LineLabel::kTransition: return "transition";
    case LineLabel::kCue: return "cue";
    case LineLabel::kParenthetical: return "parenthetical";
    case LineLabel::kDialogue: return "dialogue";
    case LineLabel::kDescription: return "description";
  }
  return "blank";
}

std::optional<LineLabel> parse_line_label(std::string_view name) {
  for (LineLabel label :
       {LineLabel::kBlank, LineLabel::kHeading, LineLabel::kTransition,
        LineLabel::kCue, LineLabel::kParenthetical, LineLabel::kDialogue,
        LineLabel::kDescription}) {
    if (line_label_name(label) == name) return label;
  }
  return std::nullopt;
}

std::string normalize_line_endings(std::string_view raw_text) {
  std::string out;
  out.reserve(raw_text.size());
  for (std::size_t i = 0; i < raw_text.size(); ++i) {
    char c = raw_text[i];
    if (c == '\r') {
      out.push_back('\n');
      if (i + 1 < raw_text.size() && raw_text[i + 1] == '\n') ++i;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

bool is_heading_line(std::string_view line) {
  return match_marker(trim(line)).has_value();
}

SettingHeader parse_heading(std::string_view line) {
  std::string_view trimmed = trim(line);
  SettingHeader header;
  auto marker = match_marker(trimmed);
  if (!marker) {
    header.interiority = Interiority::kUnknown;
    header.location_raw = text::collapse_whitespace(trimmed);
    if (header.location_raw.empty()) header.location_raw = "UNKNOWN";
    return header;
  }
  header.interiority = marker->kind;
  std::string rest =
      text::collapse_whitespace(strip_leading_separators(trimmed.substr(marker->end)));

  // Shooting scripts repeat the scene number at the end of the heading.
  if (marker->numbered && !rest.empty()) {
    std::size_t space = rest.rfind(' ');
    std::string_view tail = space == std::string::npos
                                ? std::string_view(rest)
                                : std::string_view(rest).substr(space + 1);
    std::string tail_upper = text::upper(tail);
    while (!tail_upper.empty() && tail_upper.back() == '.') tail_upper.pop_back();
    if (space != std::string::npos && tail_upper == text::upper(marker->scene_number)) {
      rest = text::collapse_whitespace(std::string_view(rest).substr(0, space));
    }
  }

  for (std::size_t dash = rest.find(" -- "); dash != std::string::npos;
       dash = rest.find(" -- ", dash)) {
    rest.replace(dash, 4, " - ");
  }
  std::size_t sep = rest.rfind(" - ");
  if (sep != std::string::npos) {
    std::string_view suffix = trim(std::string_view(rest).substr(sep + 3));
    std::string_view prefix = trim(std::string_view(rest).substr(0, sep));
    if (!suffix.empty() && !prefix.empty() && is_time_suffix(suffix)) {
      header.time_of_day = std::string(suffix);
      rest = std::string(prefix);
    }
  }
  // Trailing separators left by headings such as "EXT. SPACE -".
  while (!rest.empty() && (rest.back() == '-' || rest.back() == ' ')) rest.pop_back();
  header.location_raw = rest.empty() ? "UNKNOWN" : rest;
  return header;
}

LayoutProfile calibrate_layout(const std::vector<ScriptLine>& lines) {
  // Lines inside an obvious dialogue group (an uppercase cue followed by
  // shallower non-uppercase lines) do not vote for the description margin.
  std::vector<bool> excluded(lines.size(), false);
  for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
    std::string_view t = trim(lines[i].text);
    if (t.empty() || !looks_like_cue(t)) continue;
    const ScriptLine& next = lines[i + 1];
    std::string_view nt = trim(next.text);
    if (nt.empty() || indent_of(next) >= indent_of(lines[i])) continue;
    excluded[i] = true;
    for (std::size_t j = i + 1; j < lines.size() && !is_blank(lines[j]); ++j) {
      if (indent_of(lines[j]) >= indent_of(lines[i])) break;
      excluded[j] = true;
    }
  }

  std::map<int, std::size_t> votes;
  std::map<int, std::size_t> all_votes;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (is_blank(lines[i])) continue;
    ++all_votes[indent_of(lines[i])];
    if (!excluded[i]) ++votes[indent_of(lines[i])];
  }
  const auto& tally = votes.empty() ? all_votes : votes;

  LayoutProfile layout;
  std::size_t best = 0;
  // std::map iterates ascending, so ties keep the shallower indentation.
  for (const auto& [indent, count] : tally) {
    if (count > best) {
      best = count;
      layout.description_margin = indent;
    }
  }
  layout.cue_min_indent = layout.description_margin + kCueIndentOffset;
  return layout;
}

std::vector<ScriptChunk> chunk_scenes(std::string_view raw_text) {
  std::vector<ScriptLine> lines = to_script_lines(raw_text);

  std::vector<std::size_t> heading_rows;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (is_heading_line(lines[i].text)) heading_rows.push_back(i);
  }
  if (heading_rows.empty()) {
    throw Error(ErrorKind::kEmptyScript, "no INT/EXT scene heading found");
  }

  std::vector<ScriptLine> scripted;
  for (std::size_t i = heading_rows.front(); i < lines.size(); ++i) {
    if (!is_heading_line(lines[i].text)) scripted.push_back(lines[i]);
  }
  LayoutProfile layout = calibrate_layout(scripted);

  std::vector<ScriptChunk> chunks;
  chunks.reserve(heading_rows.size());
  for (std::size_t h = 0; h < heading_rows.size(); ++h) {
    std::size_t begin = heading_rows[h];
    std::size_t end = h + 1 < heading_rows.size() ? heading_rows[h + 1] : lines.size();
    ScriptChunk chunk;
    chunk.index = h;
    chunk.heading = lines[begin];
    chunk.body.assign(lines.begin() + static_cast<std::ptrdiff_t>(begin + 1),
                      lines.begin() + static_cast<std::ptrdiff_t>(end));
    chunk.layout = layout;
    chunks.push_back(std::move(chunk));
  }
  return chunks;
}

std::string clean_cue(std::string_view cue_line) {
  std::string name = text::strip_parentheticals(cue_line);
  // Unbracketed extensions and a trailing colon ("LUKE CONT'D", "LUKE:").
  for (std::string_view suffix : {" CONT'D", " CONT’D", " CONTD", " V.O.", " O.S.", " O.C."}) {
    if (name.size() > suffix.size() &&
        text::upper(std::string_view(name).substr(name.size() - suffix.size())) == suffix) {
      name.resize(name.size() - suffix.size());
    }
  }
  while (!name.empty() && (name.back() == ':' || is_space(name.back()))) name.pop_back();
  return text::collapse_whitespace(name);
}

ParsedBody parse_scene_body_labeled(const ScriptChunk& chunk) {
  const LayoutProfile& layout = chunk.layout;
  const auto& body = chunk.body;
  ParsedBody out;
  out.labels.assign(body.size() + 1, LineLabel::kBlank);
  out.labels[0] = LineLabel::kHeading;
  auto label = [&](std::size_t i, LineLabel l) { out.labels[i + 1] = l; };

  std::vector<std::string> paragraph;
  auto flush_paragraph = [&] {
    if (paragraph.empty()) return;
    DescriptionBlock block;
    block.text = text::join(paragraph, " ");
    block.scene_index = chunk.index;
    block.block_index = out.blocks.size();
    out.blocks.emplace_back(std::move(block));
    paragraph.clear();
  };

  auto opens_dialogue = [&](std::size_t i) {
    std::string_view t = trim(body[i].text);
    if (indent_of(body[i]) < layout.cue_min_indent || !looks_like_cue(t)) return false;
    if (i + 1 >= body.size() || is_blank(body[i + 1])) return false;
    const ScriptLine& next = body[i + 1];
    std::string_view nt = trim(next.text);
    return indent_of(next) > layout.description_margin && !is_transition(nt) &&
           !is_heading_line(nt);
  };

  std::size_t i = 0;
  while (i < body.size()) {
    std::string_view t = trim(body[i].text);
    if (t.empty()) {
      flush_paragraph();
      label(i, LineLabel::kBlank);
      ++i;
      continue;
    }
    if (is_transition(t)) {
      flush_paragraph();
      label(i, LineLabel::kTransition);
      ++i;
      continue;
    }
    if (!opens_dialogue(i)) {
      label(i, LineLabel::kDescription);
      paragraph.emplace_back(text::collapse_whitespace(t));
      ++i;
      continue;
    }

    flush_paragraph();
    const int cue_indent = indent_of(body[i]);
    Utterance utterance;
    utterance.speaker_raw = clean_cue(t);
    utterance.scene_index = chunk.index;
    label(i, LineLabel::kCue);
    ++i;

    std::vector<std::string> spoken;
    bool in_parenthetical = false;
    while (i < body.size()) {
      const ScriptLine& line = body[i];
      std::string_view lt = trim(line.text);
      if (lt.empty() || indent_of(line) <= layout.description_margin) break;
      if (is_page_marker(lt)) {
        label(i, LineLabel::kTransition);
        ++i;
        continue;
      }
      if (is_transition(lt)) break;
      // A second cue without a separating blank line.
      if (!in_parenthetical && indent_of(line) >= cue_indent - 2 && looks_like_cue(lt) &&
          lt.front() != '(') {
        break;
      }
      if (in_parenthetical || lt.front() == '(') {
        label(i, LineLabel::kParenthetical);
        std::size_t open = lt.rfind('(');
        std::size_t close = lt.rfind(')');
        if (close != std::string_view::npos && (open == std::string_view::npos || close > open)) {
          in_parenthetical = false;
        } else if (open != std::string_view::npos) {
          in_parenthetical = true;
        }
        ++i;
        continue;
      }
      label(i, LineLabel::kDialogue);
      spoken.emplace_back(lt);
      ++i;
    }
    utterance.text = text::strip_parentheticals(text::join(spoken, " "));
    utterance.block_index = out.blocks.size();
    out.blocks.emplace_back(std::move(utterance));
  }
  flush_paragraph();
  return out;
}

std::vector<SceneBlock> parse_scene_body(const ScriptChunk& chunk) {
  return parse_scene_body_labeled(chunk).blocks;
}

std::vector<Conversation> segment_conversations(const Scene& scene) {
  std::vector<Conversation> conversations;
  Conversation current;
  current.scene_index = scene.index;
  auto close = [&] {
    if (current.utterances.empty()) return;
    conversations.push_back(std::move(current));
    current = Conversation{};
    current.scene_index = scene.index;
  };
  for (const SceneBlock& block : scene.blocks) {
    if (const auto* utterance = std::get_if<Utterance>(&block)) {
      current.participants.insert(utterance->speaker_raw);
      current.utterances.push_back(*utterance);
    } else {
      close();
    }
  }
  close();
  return conversations;
}

std::vector<Scene> parse_script(std::string_view raw_text) {
  std::vector<Scene> scenes;
  for (const ScriptChunk& chunk : chunk_scenes(raw_text)) {
    Scene scene;
    scene.index = chunk.index;
    scene.header = parse_heading(chunk.heading.text);
    scene.blocks = parse_scene_body(chunk);
    scenes.push_back(std::move(scene));
  }
  return scenes;
}

}  // namespace screenplaynet
