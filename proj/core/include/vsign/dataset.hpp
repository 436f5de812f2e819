#pragma once

#include <string>
#include <string_view>

namespace vsign {

enum class Gender { Male, Female };

/// Identity encoded in a database file name such as "P25-F-50-S1 (3)".
struct SubjectMeta {
  int person = 0;
  Gender gender = Gender::Male;
  int age = 0;
  int session = 1;      // 1 or 2
  int image_index = 1;  // 1..5

  friend bool operator==(const SubjectMeta&, const SubjectMeta&) = default;
};

/// Parses P<person>-<M|F>-<age>-S<session> (<index>). A trailing image
/// extension and any leading directories are ignored; the P and S prefixes
/// are case-insensitive. Throws MalformedName naming the bad component.
SubjectMeta parse_vshi_name(std::string_view filename);

/// Inverse of parse_vshi_name, without extension.
std::string format_vshi_name(const SubjectMeta& meta);

/// Identity label used for classification, e.g. "P25".
std::string subject_label(const SubjectMeta& meta);

}  // namespace vsign
