#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace syncorr {

// Tags that fell through to the default category, with occurrence counts.
struct UnmappedTags {
  std::map<std::string, std::size_t> counts;

  void add(const std::string& tag) { ++counts[tag]; }
  std::size_t total() const;
  void merge(const UnmappedTags& other);
};

// Many-to-one map from raw POS/phrasal tags onto reduced categories.
// Lookup is total: anything unmapped goes to the default category.
class TagMap {
 public:
  explicit TagMap(std::map<std::string, std::string> entries,
                  std::string default_category = "Others");

  // Lines of the form "REDUCED: raw1 raw2 ...". Blank lines and lines
  // starting with '#' are skipped. A raw tag listed under two different
  // categories is an error; repeats under the same category are not.
  static TagMap parse(std::string_view text,
                      std::string default_category = "Others");
  static TagMap load(const std::filesystem::path& path,
                     std::string default_category = "Others");

  // Shipped defaults: 11 English categories, 7 Japanese categories.
  static const TagMap& english();
  static const TagMap& japanese();
  static const TagMap& named(std::string_view name);

  // Maps a base tag (see base_label in preprocess.hpp). Unmapped tags
  // return the default category and are recorded when `unmapped` is set.
  const std::string& map(const std::string& tag,
                         UnmappedTags* unmapped = nullptr) const;
  bool contains(const std::string& tag) const { return entries_.count(tag) > 0; }

  // Image of the map, default category included.
  std::set<std::string> categories() const;
  const std::string& default_category() const { return default_category_; }
  const std::map<std::string, std::string>& entries() const { return entries_; }

  // Serialises back to the "REDUCED: raw ..." form, one line per category.
  std::string to_text() const;

 private:
  std::map<std::string, std::string> entries_;
  std::string default_category_;
};

}  // namespace syncorr
