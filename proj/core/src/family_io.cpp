#include "ellsum/family_io.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace ellsum::io {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

Poly parse_coefficients(const std::string& value, int line) {
  if (value.size() < 2 || value.front() != '[' || value.back() != ']') {
    throw ParseError(line, "coefficient list must be written as [c0, c1, ...]");
  }
  const std::string body = trim(std::string_view(value).substr(1, value.size() - 2));
  std::vector<BigInt> coeffs;
  if (body.empty()) return Poly{};
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string tok = trim(item);
    std::size_t i = (!tok.empty() && (tok[0] == '-' || tok[0] == '+')) ? 1 : 0;
    if (i == tok.size()) throw ParseError(line, "malformed integer '" + tok + "'");
    for (std::size_t j = i; j < tok.size(); ++j) {
      if (!std::isdigit(static_cast<unsigned char>(tok[j]))) throw ParseError(line, "malformed integer '" + tok + "'");
    }
    coeffs.emplace_back(tok[0] == '+' ? tok.substr(1) : tok);
  }
  return Poly(std::move(coeffs));
}

}  // namespace

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

curves::WeierstrassFamily parse_family_text(std::string_view text) {
  static const std::map<std::string, int> kLongKeys{{"a1", 0}, {"a2", 1}, {"a3", 2}, {"a4", 3}, {"a6", 4}};
  std::array<std::optional<Poly>, 5> long_form;
  std::optional<Poly> short_a, short_b;
  std::string label;
  int last_line = 0;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    last_line = line;
    const std::string content = trim(raw.substr(0, raw.find('#')));
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected 'key = value'");
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    if (key == "label") {
      label = value;
    } else if (auto it = kLongKeys.find(key); it != kLongKeys.end()) {
      if (long_form[static_cast<std::size_t>(it->second)]) throw ParseError(line, "duplicate key '" + key + "'");
      long_form[static_cast<std::size_t>(it->second)] = parse_coefficients(value, line);
    } else if (key == "A" || key == "B") {
      auto& slot = key == "A" ? short_a : short_b;
      if (slot) throw ParseError(line, "duplicate key '" + key + "'");
      slot = parse_coefficients(value, line);
    } else {
      throw ParseError(line, "unknown key '" + key + "'");
    }
  }

  bool any_long = false;
  for (const auto& p : long_form) any_long = any_long || p.has_value();
  const bool any_short = short_a.has_value() || short_b.has_value();
  if (any_long && any_short) throw ParseError(last_line, "mixes long-form a-invariants with short-form A/B");
  if (!any_long && !any_short) throw ParseError(last_line, "no a-invariants and no A/B given");

  try {
    if (any_short) {
      return curves::WeierstrassFamily::from_short(short_a.value_or(Poly{}), short_b.value_or(Poly{}), label);
    }
    return curves::WeierstrassFamily(long_form[0].value_or(Poly{}), long_form[1].value_or(Poly{}),
                                     long_form[2].value_or(Poly{}), long_form[3].value_or(Poly{}),
                                     long_form[4].value_or(Poly{}), label);
  } catch (const std::invalid_argument& e) {
    throw ParseError(last_line, e.what());
  }
}

curves::WeierstrassFamily parse_family(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open family file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_family_text(ss.str());
}

std::string format_family(const curves::WeierstrassFamily& family) {
  auto list = [](const Poly& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.coefficients().size(); ++i) {
      if (i) s += ", ";
      s += p.coefficients()[i].str();
    }
    return s + "]";
  };
  std::ostringstream os;
  if (!family.label().empty()) os << "label = " << family.label() << "\n";
  os << "a1 = " << list(family.a1()) << "\n";
  os << "a2 = " << list(family.a2()) << "\n";
  os << "a3 = " << list(family.a3()) << "\n";
  os << "a4 = " << list(family.a4()) << "\n";
  os << "a6 = " << list(family.a6()) << "\n";
  return os.str();
}

}  // namespace ellsum::io
