#include "mg/model.hpp"

#include <charconv>
#include <json.hpp>
#include <sstream>

namespace mg {

std::string transcript_to_csv(const PublicTranscript& t) {
  std::string out = "day,attendance_a,attendance_b\n";
  for (std::size_t d = 1; d <= t.size(); ++d) {
    out += std::to_string(d);
    out += ',';
    out += std::to_string(t.day(d).attendance_a);
    out += ',';
    out += std::to_string(t.day(d).attendance_b);
    out += '\n';
  }
  return out;
}

namespace {

std::uint32_t parse_u32(const std::string& field, const char* what) {
  std::uint32_t value = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument(std::string("transcript csv: bad ") + what + ": '" + field + "'");
  }
  return value;
}

}  // namespace

PublicTranscript transcript_from_csv(const std::string& csv) {
  PublicTranscript t;
  std::istringstream in(csv);
  std::string line;
  bool first = true;
  std::uint32_t expected_day = 1;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line == "day,attendance_a,attendance_b") continue;
    }
    std::istringstream fields(line);
    std::string day_field, a_field, b_field;
    if (!std::getline(fields, day_field, ',') || !std::getline(fields, a_field, ',') ||
        !std::getline(fields, b_field)) {
      throw std::invalid_argument("transcript csv: expected 3 columns: '" + line + "'");
    }
    if (parse_u32(day_field, "day") != expected_day) {
      throw std::invalid_argument("transcript csv: days must be 1,2,3,...");
    }
    ++expected_day;
    t.append(DayRecord{parse_u32(a_field, "attendance_a"), parse_u32(b_field, "attendance_b")});
  }
  return t;
}

std::string transcript_to_json(const PublicTranscript& t) {
  nlohmann::json days = nlohmann::json::array();
  for (std::size_t d = 1; d <= t.size(); ++d) {
    days.push_back({{"day", d},
                    {"attendance_a", t.day(d).attendance_a},
                    {"attendance_b", t.day(d).attendance_b}});
  }
  return nlohmann::json{{"days", std::move(days)}}.dump();
}

PublicTranscript transcript_from_json(const std::string& json_text) {
  const nlohmann::json parsed = nlohmann::json::parse(json_text);
  PublicTranscript t;
  std::uint32_t expected_day = 1;
  for (const auto& rec : parsed.at("days")) {
    if (rec.at("day").get<std::uint32_t>() != expected_day) {
      throw std::invalid_argument("transcript json: days must be 1,2,3,...");
    }
    ++expected_day;
    t.append(DayRecord{rec.at("attendance_a").get<std::uint32_t>(),
                       rec.at("attendance_b").get<std::uint32_t>()});
  }
  return t;
}

}  // namespace mg
