#include "conicmin/conic_io.hpp"

#include "conicmin/poly_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace conicmin {

namespace {

// key: value lines, ignoring blanks and '#' comments
std::vector<std::pair<std::string, std::string>> read_kv(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    size_t s = line.find_first_not_of(" \t\r");
    if (s == std::string::npos) continue;
    if (line[s] == '#') continue;
    size_t colon = line.find(':', s);
    if (colon == std::string::npos) {
      out.emplace_back(line.substr(s), "");
      continue;
    }
    std::string key = line.substr(s, colon - s);
    size_t v = line.find_first_not_of(" \t", colon + 1);
    std::string val = v == std::string::npos ? "" : line.substr(v);
    while (!val.empty() && (val.back() == '\r' || val.back() == ' ')) val.pop_back();
    out.emplace_back(std::move(key), std::move(val));
  }
  return out;
}

VarList parse_vars(const std::string& val) {
  VarList vars;
  std::string cur;
  for (char c : val + ",") {
    if (c == ',') {
      while (!cur.empty() && cur.front() == ' ') cur.erase(cur.begin());
      while (!cur.empty() && cur.back() == ' ') cur.pop_back();
      if (!cur.empty()) vars.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (vars.empty()) throw ParseError("empty variable list");
  return vars;
}

std::string vars_str(const VarList& vars) {
  std::string s;
  for (size_t i = 0; i < vars.size(); ++i) {
    if (i) s += ",";
    s += vars[i];
  }
  return s;
}

constexpr const char* kCoeffNames = "abcdef";

Conic conic_from_map(const std::map<std::string, std::string>& kv, const std::string& prefix,
                     const VarList& vars) {
  std::array<MultiPoly, 6> c;
  for (size_t i = 0; i < 6; ++i) {
    auto it = kv.find(prefix + kCoeffNames[i]);
    if (it == kv.end())
      throw ParseError("missing coefficient '" + prefix + kCoeffNames[i] + "'");
    c[i] = parse_poly(it->second, vars);
  }
  return Conic(vars, std::move(c));
}

}  // namespace

std::string write_conic(const Conic& L) {
  std::ostringstream out;
  out << "vars: " << vars_str(L.vars()) << "\n";
  for (size_t i = 0; i < 6; ++i)
    out << kCoeffNames[i] << ": " << L.coeffs()[i].str() << "\n";
  return out.str();
}

Conic read_conic(std::istream& in) {
  std::map<std::string, std::string> kv;
  VarList vars;
  for (auto& [k, v] : read_kv(in)) {
    if (k == "vars")
      vars = parse_vars(v);
    else
      kv[k] = v;
  }
  if (vars.empty()) throw ParseError("conic file: missing 'vars' header");
  return conic_from_map(kv, "", vars);
}

Conic read_conic_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open conic file: " + path);
  return read_conic(in);
}

void write_conic_file(const std::string& path, const Conic& L) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write conic file: " + path);
  out << write_conic(L);
}

std::string write_log(const LogFile& lf) {
  std::ostringstream out;
  out << "conic-log v1\n";
  out << "vars: " << vars_str(lf.source.vars()) << "\n";
  for (size_t i = 0; i < 6; ++i)
    out << "source." << kCoeffNames[i] << ": " << lf.source.coeffs()[i].str() << "\n";
  out << "steps: " << lf.log.size() << "\n";
  for (size_t k = 0; k < lf.log.size(); ++k) {
    const TransformStep& s = lf.log.steps()[k];
    const std::string p = "step." + std::to_string(k + 1) + ".";
    out << p << "kind: " << (s.kind == StepKind::Transform ? "transform" : "patch_swap")
        << "\n";
    out << p << "label: " << s.label << "\n";
    if (s.kind == StepKind::Transform) {
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
          out << p << "u" << (r + 1) << (c + 1) << ": " << s.u.at(r, c).str() << "\n";
      out << p << "scalar.num: " << s.scalar.num().str() << "\n";
      out << p << "scalar.den: " << s.scalar.den().str() << "\n";
    } else {
      out << p << "patch_var: " << (s.patch_var + 1) << "\n";
    }
    out << p << "digest: " << s.digest << "\n";
  }
  for (size_t i = 0; i < 6; ++i)
    out << "target." << kCoeffNames[i] << ": " << lf.target.coeffs()[i].str() << "\n";
  return out.str();
}

LogFile read_log(std::istream& in) {
  auto kvs = read_kv(in);
  if (kvs.empty() || kvs[0].first != "conic-log v1")
    throw ParseError("log file: missing 'conic-log v1' header");
  std::map<std::string, std::string> kv;
  VarList vars;
  for (size_t i = 1; i < kvs.size(); ++i) {
    if (kvs[i].first == "vars")
      vars = parse_vars(kvs[i].second);
    else
      kv[kvs[i].first] = kvs[i].second;
  }
  if (vars.empty()) throw ParseError("log file: missing 'vars'");
  Conic source = conic_from_map(kv, "source.", vars);
  Conic target = conic_from_map(kv, "target.", vars);

  auto get = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw ParseError("log file: missing '" + key + "'");
    return it->second;
  };

  TransformLog log;
  const size_t nsteps = (size_t)std::stoll(get("steps"));
  for (size_t k = 1; k <= nsteps; ++k) {
    const std::string p = "step." + std::to_string(k) + ".";
    TransformStep s;
    const std::string& kind = get(p + "kind");
    s.label = kv.count(p + "label") ? kv[p + "label"] : "";
    s.digest = kv.count(p + "digest") ? kv[p + "digest"] : "";
    if (kind == "transform") {
      s.kind = StepKind::Transform;
      s.u = Mat3::zero(vars);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
          s.u.at(r, c) = parse_poly(
              get(p + "u" + std::to_string(r + 1) + std::to_string(c + 1)), vars);
      s.scalar = RationalFunction(parse_poly(get(p + "scalar.num"), vars),
                                  parse_poly(get(p + "scalar.den"), vars));
    } else if (kind == "patch_swap") {
      s.kind = StepKind::PatchSwap;
      s.u = Mat3::identity(vars);
      s.scalar = RationalFunction::one(vars);
      s.patch_var = std::stoi(get(p + "patch_var")) - 1;
    } else {
      throw ParseError("log file: unknown step kind '" + kind + "'");
    }
    log.append(std::move(s));
  }
  return LogFile{std::move(source), std::move(log), std::move(target)};
}

LogFile read_log_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open log file: " + path);
  return read_log(in);
}

void write_log_file(const std::string& path, const LogFile& lf) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write log file: " + path);
  out << write_log(lf);
}

}  // namespace conicmin
