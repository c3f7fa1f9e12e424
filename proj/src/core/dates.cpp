#include "core/dates.hpp"

#include <cstdio>

namespace msq {

std::optional<std::chrono::sys_days> parse_iso_date(const std::string& s) {
  int y = 0, m = 0, d = 0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%4d-%2d-%2d%c", &y, &m, &d, &tail) != 3)
    return std::nullopt;
  if (s.size() != 10) return std::nullopt;
  std::chrono::year_month_day ymd{std::chrono::year{y},
                                  std::chrono::month{unsigned(m)},
                                  std::chrono::day{unsigned(d)}};
  if (!ymd.ok()) return std::nullopt;
  return std::chrono::sys_days(ymd);
}

std::string format_iso_date(std::chrono::sys_days d) {
  std::chrono::year_month_day ymd(d);
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()));
  return buf;
}

std::chrono::sys_days next_weekday(std::chrono::sys_days d) {
  do {
    d += std::chrono::days{1};
  } while (std::chrono::weekday(d) == std::chrono::Saturday ||
           std::chrono::weekday(d) == std::chrono::Sunday);
  return d;
}

}  // namespace msq
