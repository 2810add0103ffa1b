#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "exqmc/levin_halton.hpp"
#include "exqmc/rational.hpp"

namespace exqmc {

using Json = nlohmann::ordered_json;

// {"exact": "p/q", "decimal": "0.1234..."}
Json rational_json(const Rational& value, int digits = 12);
Rational rational_from_json(const Json& value);

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string command;
  Json config = Json::object();
  Json values = Json::object();
  std::vector<Verdict> verdicts;
  double seconds = 0.0;

  void check(std::string name, bool pass, std::string detail = {});
  bool all_pass() const;
  Json to_json() const;
};

// "N,delta_num,delta_den" followed by one row per window length, N ascending.
std::string trajectory_csv(const WindowTrace& trace);

// Writes to a sibling temporary and renames over `path`. I/O failures are
// thrown as std::runtime_error carrying the system message.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace exqmc
