#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace verinews {

/// Four-way veracity code. The numeric values are the on-disk encoding.
enum class Label : std::uint8_t {
  kFalse = 0,
  kTrue = 1,
  kPartiallyFalse = 2,
  kOther = 3,
};

inline constexpr std::size_t kNumLabels = 4;

inline constexpr std::array<Label, kNumLabels> kAllLabels = {
    Label::kFalse, Label::kTrue, Label::kPartiallyFalse, Label::kOther};

constexpr std::size_t index_of(Label label) noexcept {
  return static_cast<std::size_t>(label);
}

/// Returns the label for a code in 0..3, nothing otherwise.
constexpr std::optional<Label> label_from_code(std::int64_t code) noexcept {
  if (code < 0 || code >= static_cast<std::int64_t>(kNumLabels)) return std::nullopt;
  return static_cast<Label>(code);
}

/// "false", "true", "partially_false", "other".
std::string_view display_name(Label label) noexcept;

/// Case-insensitive match after trimming and collapsing whitespace runs.
/// Underscores count as whitespace so display names parse back.
/// Throws LabelError on anything else.
Label parse_label(std::string_view raw);

}  // namespace verinews
