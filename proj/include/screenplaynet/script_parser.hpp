#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace screenplaynet {

enum class Interiority { kInterior, kExterior, kBoth, kUnknown };

std::string_view interiority_name(Interiority value);

struct SettingHeader {
  Interiority interiority = Interiority::kUnknown;
  std::string location_raw;
  std::optional<std::string> time_of_day;

  // Canonical heading line; parse_heading(render()) == *this.
  std::string render() const;

  friend bool operator==(const SettingHeader&, const SettingHeader&) = default;
};

struct Utterance {
  std::string speaker_raw;
  std::string text;
  std::size_t scene_index = 0;
  std::size_t block_index = 0;
};

struct DescriptionBlock {
  std::string text;
  std::size_t scene_index = 0;
  std::size_t block_index = 0;
};

using SceneBlock = std::variant<DescriptionBlock, Utterance>;

struct Scene {
  std::size_t index = 0;
  SettingHeader header;
  std::vector<SceneBlock> blocks;
};

struct Conversation {
  std::size_t scene_index = 0;
  std::vector<Utterance> utterances;
  std::set<std::string> participants;
};

// Indentation profile calibrated once per script.
struct LayoutProfile {
  int description_margin = 0;
  // Cue candidates must sit at least this deep.
  int cue_min_indent = 8;
};

inline constexpr int kCueIndentOffset = 8;

struct ScriptLine {
  std::size_t number = 0;  // 1-based line number in the normalized input
  std::string text;        // tabs expanded, trailing whitespace removed
};

struct ScriptChunk {
  std::size_t index = 0;
  ScriptLine heading;
  std::vector<ScriptLine> body;
  LayoutProfile layout;
};

// Classification of every line of a chunk.
enum class LineLabel {
  kBlank,
  kHeading,
  kTransition,  // CUT TO:, FADE IN:, (CONTINUED), bare page numbers
  kCue,
  kParenthetical,
  kDialogue,
  kDescription,
};

std::string_view line_label_name(LineLabel label);
std::optional<LineLabel> parse_line_label(std::string_view name);

struct ParsedBody {
  std::vector<SceneBlock> blocks;
  // labels[0] is the heading; labels[i + 1] belongs to chunk.body[i].
  std::vector<LineLabel> labels;
};

// Replaces CR/LF and lone CR with LF.
std::string normalize_line_endings(std::string_view raw_text);

// True when the line carries an INT/EXT style marker.
bool is_heading_line(std::string_view line);

SettingHeader parse_heading(std::string_view line);

// Splits the script at heading lines. Text before the first heading is
// dropped. Throws Error(kEmptyScript) when there is no heading at all.
std::vector<ScriptChunk> chunk_scenes(std::string_view raw_text);

// Calibrates the layout from the non-blank lines of a script.
LayoutProfile calibrate_layout(const std::vector<ScriptLine>& lines);

ParsedBody parse_scene_body_labeled(const ScriptChunk& chunk);
std::vector<SceneBlock> parse_scene_body(const ScriptChunk& chunk);

// Removes production extensions such as (V.O.) and (CONT'D).
std::string clean_cue(std::string_view cue_line);

std::vector<Conversation> segment_conversations(const Scene& scene);

// chunk_scenes + parse_heading + parse_scene_body for a whole script.
std::vector<Scene> parse_script(std::string_view raw_text);

}  // namespace screenplaynet
