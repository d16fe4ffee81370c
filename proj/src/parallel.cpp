#include "verinews/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

namespace verinews {

std::size_t default_thread_count() {
  if (const char* env = std::getenv("VERINEWS_THREADS")) {
    const std::string_view text(env);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc() && ptr == text.data() + text.size() && value > 0) return value;
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace verinews
