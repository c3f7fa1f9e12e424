#pragma once

#include <chrono>
#include <optional>
#include <string>

namespace msq {

// Calendar date handling for the price CSV (ISO-8601, YYYY-MM-DD).
// Dates are kept as strings in the panels; these helpers exist for
// validation, ordering and synthetic-date generation.

std::optional<std::chrono::sys_days> parse_iso_date(const std::string& s);

std::string format_iso_date(std::chrono::sys_days d);

// Next Monday..Friday strictly after d.
std::chrono::sys_days next_weekday(std::chrono::sys_days d);

}  // namespace msq
