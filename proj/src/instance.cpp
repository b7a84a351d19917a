#include "cctp/instance.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "cctp/errors.hpp"

namespace cctp {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view token, std::size_t line) {
  token = trim(token);
  double value = 0.0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, "expected a number, got '" + std::string(token) + "'");
  }
  return value;
}

std::size_t parse_count(std::string_view token, std::size_t line) {
  token = trim(token);
  std::size_t value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

enum class Section { Header, Nodes, Items };

}  // namespace

double Instance::distance(std::size_t i, std::size_t j) const {
  if (i >= coords.size() || j >= coords.size()) {
    throw ContractViolation("distance: city index out of range");
  }
  if (i == j) return 0.0;
  const double dx = coords[i].x - coords[j].x;
  const double dy = coords[i].y - coords[j].y;
  return std::ceil(std::sqrt(dx * dx + dy * dy));
}

void Instance::validate() const {
  if (coords.size() < 2) throw InputError("instance needs at least two cities");
  if (nominal_weights.size() != profits.size() || item_city.size() != profits.size()) {
    throw InputError("item arrays have different lengths");
  }
  for (std::size_t i = 0; i < profits.size(); ++i) {
    if (!(profits[i] >= 0.0) || !(nominal_weights[i] >= 0.0)) {
      throw InputError("item " + std::to_string(i + 1) + " has a negative profit or weight");
    }
    if (item_city[i] == 0 || item_city[i] >= coords.size()) {
      throw InputError("item " + std::to_string(i + 1) + " is not assigned to a city in 2..n");
    }
  }
  if (!(capacity > 0.0)) throw InputError("capacity must be positive");
  if (!(v_min > 0.0) || !(v_max > v_min)) throw InputError("speeds must satisfy v_max > v_min > 0");
  if (!(renting_rate >= 0.0)) throw InputError("renting rate must be non-negative");
  const double n = nu();
  if (!std::isfinite(n) || !(n > 0.0)) throw InputError("speed normaliser is not finite and positive");
}

Instance parse_instance(std::istream& in) {
  Instance inst;
  std::optional<std::size_t> dimension;
  std::optional<std::size_t> item_count;
  bool have_capacity = false, have_min = false, have_max = false, have_rate = false;
  std::vector<bool> seen_node, seen_item;

  Section section = Section::Header;
  std::size_t nodes_read = 0, items_read = 0;
  std::size_t section_line = 0;
  std::string raw;
  std::size_t line_no = 0;

  auto require_header = [&](std::size_t line) {
    if (!dimension || !item_count) {
      throw ParseError(line, "section starts before DIMENSION and NUMBER OF ITEMS are known");
    }
  };

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    if (line.starts_with("NODE_COORD_SECTION")) {
      require_header(line_no);
      section = Section::Nodes;
      section_line = line_no;
      continue;
    }
    if (line.starts_with("ITEMS SECTION")) {
      require_header(line_no);
      if (nodes_read != *dimension) {
        throw ParseError(line_no, "expected " + std::to_string(*dimension) +
                                      " coordinate lines, found " + std::to_string(nodes_read));
      }
      section = Section::Items;
      section_line = line_no;
      continue;
    }

    if (section == Section::Header) {
      const auto colon = line.find(':');
      if (colon == std::string_view::npos) throw ParseError(line_no, "malformed header line");
      const std::string key(trim(line.substr(0, colon)));
      const std::string_view value = trim(line.substr(colon + 1));
      if (key == "PROBLEM NAME") {
        inst.name = std::string(value);
      } else if (key == "KNAPSACK DATA TYPE") {
        inst.knapsack_type = std::string(value);
      } else if (key == "DIMENSION") {
        dimension = parse_count(value, line_no);
        inst.coords.assign(*dimension, Point{});
        seen_node.assign(*dimension, false);
      } else if (key == "NUMBER OF ITEMS") {
        item_count = parse_count(value, line_no);
        inst.profits.assign(*item_count, 0.0);
        inst.nominal_weights.assign(*item_count, 0.0);
        inst.item_city.assign(*item_count, 0);
        seen_item.assign(*item_count, false);
      } else if (key == "CAPACITY OF KNAPSACK") {
        inst.capacity = parse_real(value, line_no);
        have_capacity = true;
      } else if (key == "MIN SPEED") {
        inst.v_min = parse_real(value, line_no);
        have_min = true;
      } else if (key == "MAX SPEED") {
        inst.v_max = parse_real(value, line_no);
        have_max = true;
      } else if (key == "RENTING RATIO") {
        inst.renting_rate = parse_real(value, line_no);
        have_rate = true;
      } else if (key == "EDGE_WEIGHT_TYPE") {
        if (value != "CEIL_2D") {
          throw ParseError(line_no, "unsupported edge weight type '" + std::string(value) + "'");
        }
      } else {
        throw ParseError(line_no, "malformed header key '" + key + "'");
      }
      continue;
    }

    const auto fields = split_ws(line);
    if (section == Section::Nodes) {
      if (fields.size() != 3) throw ParseError(line_no, "coordinate line needs 'index x y'");
      const std::size_t index = parse_count(fields[0], line_no);
      if (index < 1 || index > *dimension) throw ParseError(line_no, "city index out of range");
      if (seen_node[index - 1]) throw ParseError(line_no, "duplicate city index");
      if (nodes_read == *dimension) {
        throw ParseError(line_no, "more coordinate lines than DIMENSION");
      }
      seen_node[index - 1] = true;
      inst.coords[index - 1] = Point{parse_real(fields[1], line_no), parse_real(fields[2], line_no)};
      ++nodes_read;
    } else {
      if (fields.size() != 4) {
        throw ParseError(line_no, "item line needs 'index profit weight city'");
      }
      const std::size_t index = parse_count(fields[0], line_no);
      if (index < 1 || index > *item_count) throw ParseError(line_no, "item index out of range");
      if (seen_item[index - 1]) throw ParseError(line_no, "duplicate item index");
      if (items_read == *item_count) throw ParseError(line_no, "more item lines than NUMBER OF ITEMS");
      const double profit = parse_real(fields[1], line_no);
      const double weight = parse_real(fields[2], line_no);
      const std::size_t city = parse_count(fields[3], line_no);
      if (profit < 0.0) throw ParseError(line_no, "negative profit");
      if (weight < 0.0) throw ParseError(line_no, "negative weight");
      if (city == 1) throw ParseError(line_no, "item assigned to city 1");
      if (city < 1 || city > *dimension) throw ParseError(line_no, "item city out of range");
      seen_item[index - 1] = true;
      inst.profits[index - 1] = profit;
      inst.nominal_weights[index - 1] = weight;
      inst.item_city[index - 1] = city - 1;
      ++items_read;
    }
  }

  if (!dimension || !item_count) throw ParseError(line_no, "missing DIMENSION or NUMBER OF ITEMS");
  if (!have_capacity || !have_min || !have_max || !have_rate) {
    throw ParseError(line_no, "missing one of CAPACITY OF KNAPSACK, MIN SPEED, MAX SPEED, RENTING RATIO");
  }
  if (section != Section::Items) {
    if (nodes_read != *dimension) {
      throw ParseError(section_line, "expected " + std::to_string(*dimension) +
                                         " coordinate lines, found " + std::to_string(nodes_read));
    }
    if (*item_count > 0) throw ParseError(line_no, "missing ITEMS SECTION");
  }
  if (items_read != *item_count) {
    throw ParseError(section_line, "expected " + std::to_string(*item_count) +
                                       " item lines, found " + std::to_string(items_read));
  }
  try {
    inst.validate();
  } catch (const InputError& e) {
    throw ParseError(line_no, e.what());
  }
  return inst;
}

Instance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_instance(in);
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file " + path.string());
  try {
    return parse_instance(in);
  } catch (const ParseError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

namespace {

// Shortest text that parses back to the same double.
std::string num(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  out << "PROBLEM NAME: \t" << inst.name << "\n";
  out << "KNAPSACK DATA TYPE: \t" << inst.knapsack_type << "\n";
  out << "DIMENSION:\t" << inst.num_cities() << "\n";
  out << "NUMBER OF ITEMS: \t" << inst.num_items() << "\n";
  out << "CAPACITY OF KNAPSACK: \t" << num(inst.capacity) << "\n";
  out << "MIN SPEED: \t" << num(inst.v_min) << "\n";
  out << "MAX SPEED: \t" << num(inst.v_max) << "\n";
  out << "RENTING RATIO: \t" << num(inst.renting_rate) << "\n";
  out << "EDGE_WEIGHT_TYPE:\tCEIL_2D\n";
  out << "NODE_COORD_SECTION\t(INDEX, X, Y): \n";
  for (std::size_t c = 0; c < inst.num_cities(); ++c) {
    out << c + 1 << "\t" << num(inst.coords[c].x) << "\t" << num(inst.coords[c].y) << "\n";
  }
  out << "ITEMS SECTION\t(INDEX, PROFIT, WEIGHT, ASSIGNED NODE NUMBER): \n";
  for (std::size_t i = 0; i < inst.num_items(); ++i) {
    out << i + 1 << "\t" << num(inst.profits[i]) << "\t" << num(inst.nominal_weights[i]) << "\t"
        << inst.item_city[i] + 1 << "\n";
  }
  return out.str();
}

}  // namespace cctp
