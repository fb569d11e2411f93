#pragma once

// JSON file formats for elements, matrices, states and two-party tables.
// Serialization of canonical in-memory values round-trips byte-identically:
// terms are emitted in ascending monomial order and doubles with their
// shortest round-trip representation.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "superq/entangle.hpp"
#include "superq/error.hpp"
#include "superq/grassmann.hpp"
#include "superq/supermatrix.hpp"
#include "superq/superstate.hpp"

namespace superq {

using json = nlohmann::json;

inline json element_to_json(const GrassmannElement& z) {
  json terms = json::array();
  for (auto& [mask, c] : z.terms()) {
    json gens = json::array();
    for (int i = 0; i < z.generators(); ++i)
      if (mask & (std::uint64_t{1} << i)) gens.push_back(i + 1);
    terms.push_back({{"gens", gens}, {"re", c.real()}, {"im", c.imag()}});
  }
  return {{"n", z.generators()}, {"terms", terms}};
}

inline GrassmannElement element_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("terms"))
    throw parse_error("element needs \"n\" and \"terms\"");
  const int n = j.at("n").get<int>();
  if (n < 0 || n > kMaxGenerators) throw parse_error("generator count out of range");
  GrassmannElement::term_map terms;
  for (const json& t : j.at("terms")) {
    if (!t.contains("gens") || !t.contains("re") || !t.contains("im"))
      throw parse_error("term needs \"gens\", \"re\", \"im\"");
    std::uint64_t mask = 0;
    int prev = 0;
    for (const json& g : t.at("gens")) {
      const int idx = g.get<int>();
      if (idx < 1 || idx > n) throw parse_error("generator index out of range");
      if (idx <= prev) throw parse_error("gens must be strictly increasing");
      mask |= std::uint64_t{1} << (idx - 1);
      prev = idx;
    }
    const cplx c{t.at("re").get<double>(), t.at("im").get<double>()};
    auto [it, inserted] = terms.emplace(mask, c);
    if (!inserted) throw parse_error("duplicate monomial in terms");
  }
  return GrassmannElement::from_terms(n, std::move(terms));
}

inline GrassmannElement element_from_json(const json& j, int expected_n) {
  const GrassmannElement z = element_from_json(j);
  if (z.generators() != expected_n)
    throw parse_error("embedded element disagrees with the container's \"n\"");
  return z;
}

inline json matrix_to_json(const SuperMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.dim(); ++j) row.push_back(element_to_json(m.at(i, j)));
    rows.push_back(row);
  }
  return {{"p", m.format().p},
          {"q", m.format().q},
          {"parity", parity_int(m.parity())},
          {"n", m.generators()},
          {"entries", rows}};
}

inline SuperMatrix matrix_from_json(const json& j) {
  for (const char* key : {"p", "q", "parity", "n", "entries"})
    if (!j.contains(key)) throw parse_error(std::string("matrix needs \"") + key + "\"");
  const SuperFormat fmt{j.at("p").get<int>(), j.at("q").get<int>()};
  if (fmt.p < 0 || fmt.q < 0 || fmt.dim() < 1) throw parse_error("invalid (p|q) format");
  const Parity parity = parity_from_int(j.at("parity").get<int>());
  const int n = j.at("n").get<int>();
  SuperMatrix m(fmt, parity, n);
  const json& rows = j.at("entries");
  if (static_cast<int>(rows.size()) != fmt.dim()) throw parse_error("wrong entry row count");
  for (int i = 0; i < fmt.dim(); ++i) {
    const json& row = rows.at(i);
    if (static_cast<int>(row.size()) != fmt.dim()) throw parse_error("wrong entry column count");
    for (int k = 0; k < fmt.dim(); ++k) m.at(i, k) = element_from_json(row.at(k), n);
  }
  return m;
}

inline json state_to_json(const SuperKet& k) {
  json even = json::array();
  json odd = json::array();
  for (int i = 0; i < k.dim(); ++i) {
    if (k.format().slot(i) == Parity::even)
      even.push_back(element_to_json(k.coord(i)));
    else
      odd.push_back(element_to_json(k.coord(i)));
  }
  return {{"r", k.format().r},
          {"s", k.format().s},
          {"parity", parity_int(k.parity())},
          {"n", k.generators()},
          {"even", even},
          {"odd", odd}};
}

inline SuperKet state_from_json(const json& j) {
  for (const char* key : {"r", "s", "parity", "n", "even", "odd"})
    if (!j.contains(key)) throw parse_error(std::string("state needs \"") + key + "\"");
  const SpaceFormat fmt{j.at("r").get<int>(), j.at("s").get<int>()};
  if (fmt.r < 1 || fmt.s < 0) throw parse_error("invalid (r|s) format");
  const Parity parity = parity_from_int(j.at("parity").get<int>());
  const int n = j.at("n").get<int>();
  const json& even = j.at("even");
  const json& odd = j.at("odd");
  if (static_cast<int>(even.size()) != fmt.r) throw parse_error("wrong even coordinate count");
  if (static_cast<int>(odd.size()) != fmt.s) throw parse_error("wrong odd coordinate count");
  std::vector<GrassmannElement> coords;
  coords.reserve(fmt.dim());
  for (const json& e : even) coords.push_back(element_from_json(e, n));
  for (const json& e : odd) coords.push_back(element_from_json(e, n));
  return SuperKet(fmt, parity, n, std::move(coords));
}

inline json table_to_json(const TwoPartyTable& t) {
  json slots = json::object();
  for (int j = 0; j < t.dims(); ++j)
    for (int k = 0; k < t.dims(); ++k) {
      const std::string key = std::to_string(j) + std::to_string(k);
      slots[key] = element_to_json(t.at(j, k));
    }
  return {{"kind", table_kind_name(t.kind())}, {"n", t.generators()}, {"slots", slots}};
}

inline TwoPartyTable table_from_json(const json& j) {
  for (const char* key : {"kind", "n", "slots"})
    if (!j.contains(key)) throw parse_error(std::string("table needs \"") + key + "\"");
  const TableKind kind = table_kind_from_name(j.at("kind").get<std::string>());
  const int n = j.at("n").get<int>();
  const int d = kind == TableKind::qubit ? 2 : 3;
  std::vector<GrassmannElement> slots(static_cast<std::size_t>(d) * d, GrassmannElement(n));
  const json& in = j.at("slots");
  for (auto it = in.begin(); it != in.end(); ++it) {
    const std::string& key = it.key();
    if (key.size() != 2 || key[0] < '0' || key[0] >= '0' + d || key[1] < '0' || key[1] >= '0' + d)
      throw parse_error("bad slot key: " + key);
    const int row = key[0] - '0';
    const int col = key[1] - '0';
    slots[static_cast<std::size_t>(row) * d + col] = element_from_json(it.value(), n);
  }
  return TwoPartyTable(kind, n, std::move(slots));
}

inline json measure_report_to_json(const MeasureReport& r) {
  json j = {{"measure", r.measure}, {"value", r.value}, {"status", r.status}};
  j["calibration"] = r.calibration.empty() ? json(nullptr) : json(r.calibration);
  return j;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parse_error("cannot write file: " + path);
  out << text;
}

inline json parse_json_file(const std::string& path) {
  try {
    return json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw parse_error(std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

// Canonical on-disk form: two-space indentation plus a trailing newline.
inline std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

}  // namespace superq
