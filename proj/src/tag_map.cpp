#include "syncorr/tag_map.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "syncorr/error.hpp"

namespace syncorr {
namespace {

constexpr std::string_view kEnglish = R"(NP: NP NN NNP NNS CD PRP TMP POS QP NNPS EX NX FW
VP: VP VBD VB VBN VBG VBZ VBP TO
S: S S1 SBAR SINV FRAG SQ SBARQ RRC
PP: IN PP RP PRT
DT: DT PRP$ PDT
JJ: JJ ADJP JJR JJS NAC ADJ
Others: , . '' `` $ : PRN -RRB- -LRB- # X INTJ UH SYM LS LST HYPH NFP
AUX: AUX MD AUXG
RB: RB ADVP RBR RBS
CC: CC UCP CONJP
WH: WHNP WDT WP WHADVP WRB WHPP WP$ WHADJP NML
)";

constexpr std::string_view kJapanese =
    R"(NP: NP NUMCLP PRN NML PNLP NUMCLPSYM N NPR NUM CL ADJN PRO ADJI D Q FN WPRO PNL PRN WNUM WD FW
IP: IP VB AX AXD VB0 VB2 PASS PASS2 MD
PP: PP P
ADVP: ADVP ADV NEG WADV
CONJP: CONJP CONJ
CP: CP FRAG INTJP FS INTJ
Others: LST META LS PU PUL PUR SYM PUQ COMMENT
)";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::size_t UnmappedTags::total() const {
  std::size_t sum = 0;
  for (const auto& [tag, n] : counts) sum += n;
  return sum;
}

void UnmappedTags::merge(const UnmappedTags& other) {
  for (const auto& [tag, n] : other.counts) counts[tag] += n;
}

TagMap::TagMap(std::map<std::string, std::string> entries,
               std::string default_category)
    : entries_(std::move(entries)), default_category_(std::move(default_category)) {
  if (default_category_.empty()) throw Error("tag map: empty default category");
  for (const auto& [raw, reduced] : entries_) {
    if (raw.empty() || reduced.empty()) throw Error("tag map: empty tag");
  }
}

TagMap TagMap::parse(std::string_view text, std::string default_category) {
  std::map<std::string, std::string> entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = trim(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos || colon == 0) {
      throw Error("tag map line " + std::to_string(line_no) +
                  ": expected 'REDUCED: raw1 raw2 ...'");
    }
    const std::string reduced(trim(line.substr(0, colon)));
    std::istringstream raws{std::string(line.substr(colon + 1))};
    std::string raw;
    while (raws >> raw) {
      auto [it, inserted] = entries.emplace(raw, reduced);
      if (!inserted && it->second != reduced) {
        throw Error("tag map line " + std::to_string(line_no) + ": tag '" + raw +
                    "' mapped to both " + it->second + " and " + reduced);
      }
    }
  }
  return TagMap(std::move(entries), std::move(default_category));
}

TagMap TagMap::load(const std::filesystem::path& path, std::string default_category) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open tag map " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), std::move(default_category));
}

const TagMap& TagMap::english() {
  static const TagMap map = parse(kEnglish);
  return map;
}

const TagMap& TagMap::japanese() {
  static const TagMap map = parse(kJapanese);
  return map;
}

const TagMap& TagMap::named(std::string_view name) {
  if (name == "english") return english();
  if (name == "japanese") return japanese();
  throw Error("unknown tag map preset '" + std::string(name) +
              "' (expected english or japanese)");
}

const std::string& TagMap::map(const std::string& tag, UnmappedTags* unmapped) const {
  auto it = entries_.find(tag);
  if (it != entries_.end()) return it->second;
  if (unmapped != nullptr) unmapped->add(tag);
  return default_category_;
}

std::set<std::string> TagMap::categories() const {
  std::set<std::string> out{default_category_};
  for (const auto& [raw, reduced] : entries_) out.insert(reduced);
  return out;
}

std::string TagMap::to_text() const {
  std::map<std::string, std::string> lines;
  for (const auto& [raw, reduced] : entries_) {
    std::string& line = lines[reduced];
    line += ' ';
    line += raw;
  }
  std::string out;
  for (const auto& [reduced, raws] : lines) out += reduced + ":" + raws + "\n";
  return out;
}

}  // namespace syncorr
