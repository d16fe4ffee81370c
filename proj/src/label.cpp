#include "verinews/label.hpp"

#include <cctype>
#include <string>

#include "verinews/errors.hpp"

namespace verinews {

std::string_view display_name(Label label) noexcept {
  switch (label) {
    case Label::kFalse: return "false";
    case Label::kTrue: return "true";
    case Label::kPartiallyFalse: return "partially_false";
    case Label::kOther: return "other";
  }
  return "unknown";
}

Label parse_label(std::string_view raw) {
  std::string key;
  key.reserve(raw.size());
  bool pending_space = false;
  for (const char ch : raw) {
    const auto u = static_cast<unsigned char>(ch);
    if (std::isspace(u) || ch == '_') {
      pending_space = !key.empty();
      continue;
    }
    if (pending_space) key.push_back(' ');
    pending_space = false;
    key.push_back(static_cast<char>(std::tolower(u)));
  }
  if (key == "false") return Label::kFalse;
  if (key == "true") return Label::kTrue;
  if (key == "partially false") return Label::kPartiallyFalse;
  if (key == "other") return Label::kOther;
  throw LabelError(std::string(raw));
}

}  // namespace verinews
