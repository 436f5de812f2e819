#include "vsign/dataset.hpp"

#include <cctype>
#include <charconv>

#include "vsign/error.hpp"

namespace vsign {

namespace {

[[noreturn]] void malformed(std::string_view name, std::string_view component, std::string_view why) {
  throw Error(ErrorCode::MalformedName, "'" + std::string(name) + "': bad " + std::string(component) +
                                            " (" + std::string(why) + ")");
}

int parse_number(std::string_view text, std::string_view name, std::string_view component) {
  if (text.empty()) malformed(name, component, "missing digits");
  int value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) malformed(name, component, "not a number");
  return value;
}

bool is_upper_ascii(char c, char upper) {
  return std::toupper(static_cast<unsigned char>(c)) == upper;
}

std::string_view strip_path_and_extension(std::string_view name) {
  if (const auto slash = name.find_last_of("/\\"); slash != std::string_view::npos) {
    name.remove_prefix(slash + 1);
  }
  if (!name.empty() && name.back() != ')') {
    if (const auto dot = name.rfind('.'); dot != std::string_view::npos) name = name.substr(0, dot);
  }
  return name;
}

}  // namespace

SubjectMeta parse_vshi_name(std::string_view filename) {
  const std::string_view name = strip_path_and_extension(filename);

  std::string_view parts[4];
  std::string_view rest = name;
  for (int i = 0; i < 3; ++i) {
    const auto dash = rest.find('-');
    if (dash == std::string_view::npos) malformed(name, "layout", "expected P<n>-<g>-<age>-S<s> (<i>)");
    parts[i] = rest.substr(0, dash);
    rest.remove_prefix(dash + 1);
  }
  parts[3] = rest;

  SubjectMeta meta;
  if (parts[0].size() < 2 || !is_upper_ascii(parts[0][0], 'P')) malformed(name, "person", "expected P<number>");
  meta.person = parse_number(parts[0].substr(1), name, "person");

  if (parts[1].size() != 1) malformed(name, "gender", "expected M or F");
  if (is_upper_ascii(parts[1][0], 'M')) {
    meta.gender = Gender::Male;
  } else if (is_upper_ascii(parts[1][0], 'F')) {
    meta.gender = Gender::Female;
  } else {
    malformed(name, "gender", "expected M or F");
  }

  meta.age = parse_number(parts[2], name, "age");

  // "S<session> (<index>)"
  std::string_view tail = parts[3];
  const auto open = tail.find('(');
  if (tail.empty() || !is_upper_ascii(tail[0], 'S') || open == std::string_view::npos || tail.back() != ')') {
    malformed(name, "session", "expected S<session> (<index>)");
  }
  std::string_view session = tail.substr(1, open - 1);
  while (!session.empty() && session.back() == ' ') session.remove_suffix(1);
  meta.session = parse_number(session, name, "session");
  if (meta.session != 1 && meta.session != 2) malformed(name, "session", "must be 1 or 2");

  meta.image_index = parse_number(tail.substr(open + 1, tail.size() - open - 2), name, "image index");
  if (meta.image_index < 1 || meta.image_index > 5) malformed(name, "image index", "must be in 1..5");
  return meta;
}

std::string format_vshi_name(const SubjectMeta& meta) {
  return "P" + std::to_string(meta.person) + "-" + (meta.gender == Gender::Male ? "M" : "F") + "-" +
         std::to_string(meta.age) + "-S" + std::to_string(meta.session) + " (" +
         std::to_string(meta.image_index) + ")";
}

std::string subject_label(const SubjectMeta& meta) { return "P" + std::to_string(meta.person); }

}  // namespace vsign
