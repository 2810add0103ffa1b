#include "exqmc/report.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace exqmc {

Json rational_json(const Rational& value, int digits) {
  return Json{{"exact", value.str()}, {"decimal", value.decimal(digits)}};
}

Rational rational_from_json(const Json& value) {
  if (value.is_object()) return Rational::parse(value.at("exact").get<std::string>());
  return Rational::parse(value.get<std::string>());
}

void Report::check(std::string name, bool pass, std::string detail) {
  verdicts.push_back({std::move(name), pass, std::move(detail)});
}

bool Report::all_pass() const {
  for (const auto& v : verdicts) {
    if (!v.pass) return false;
  }
  return true;
}

Json Report::to_json() const {
  Json out;
  out["command"] = command;
  out["config"] = config;
  out["values"] = values;
  // Decimal renderings go last so the exact values lead.
  if (auto it = out["values"].find("decimal"); it != out["values"].end()) {
    Json decimal = std::move(*it);
    out["values"].erase(it);
    out["values"]["decimal"] = std::move(decimal);
  }
  Json list = Json::array();
  for (const auto& v : verdicts) {
    Json item{{"name", v.name}, {"pass", v.pass}};
    if (!v.detail.empty()) item["detail"] = v.detail;
    list.push_back(std::move(item));
  }
  out["verdicts"] = std::move(list);
  out["all_pass"] = all_pass();
  out["timing"] = {{"seconds", seconds}};
  return out;
}

std::string trajectory_csv(const WindowTrace& trace) {
  std::ostringstream os;
  os << "N,delta_num,delta_den\n";
  for (std::uint64_t n = 1; n <= trace.numerators.size(); ++n) {
    const Rational d = trace.delta(n);
    os << n << ',' << d.numerator() << ',' << d.denominator() << '\n';
  }
  return os.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + ": " + std::strerror(errno));
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + tmp + ": " + std::strerror(errno));
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    const std::string msg = std::strerror(errno);
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename " + tmp + " to " + path + ": " + msg);
  }
}

}  // namespace exqmc
