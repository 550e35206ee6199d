#include "o4d/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "o4d/errors.hpp"

namespace o4d::io {

namespace {

void emit_string(std::string& out, const std::string& s) {
  // Reuse the library's escaping for strings.
  out += json(s).dump();
}

void emit(std::string& out, const json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string pad_end = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        emit_string(out, it.key());
        out += indent > 0 ? ": " : ":";
        emit(out, it.value(), indent, depth + 1);
      }
      out += nl;
      out += pad_end + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Numeric arrays stay on one line.
      bool flat = true;
      for (const auto& e : j) flat = flat && (e.is_number() || e.is_null() || e.is_boolean());
      out += "[";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) {
          out += nl;
          out += pad;
        }
        emit(out, e, indent, depth + 1);
      }
      if (!flat) {
        out += nl;
        out += pad_end;
      }
      out += "]";
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.16e", x);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ValidationError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(path + ": missing field '" + key + "'");
  return *it;
}

std::vector<double> numbers(const json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError(path + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ValidationError(path + "[" + std::to_string(i) + "]: expected a number");
    out.push_back(j[i].get<double>());
  }
  return out;
}

json vec(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

}  // namespace

std::string dump(const json& j, int indent) {
  std::string out;
  emit(out, j, indent, 0);
  out += "\n";
  return out;
}

json parse(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(source + ": malformed JSON at byte " + std::to_string(e.byte));
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
}

json to_json(const LogRadialFunction& f) {
  json j;
  j["meta"] = {{"name", f.name}, {"closed_form", f.closed_form ? json(*f.closed_form) : json(nullptr)}};
  j["grid_s"] = vec(f.grid.s);
  j["values"] = vec(f.values);
  return j;
}

LogRadialFunction function_from_json(const json& j, const std::string& path) {
  LogRadialFunction f;
  if (j.is_object() && j.contains("meta")) {
    const json& m = j["meta"];
    if (!m.is_object()) throw ValidationError(path + ".meta: expected an object");
    if (m.contains("name")) {
      if (!m["name"].is_string()) throw ValidationError(path + ".meta.name: expected a string");
      f.name = m["name"].get<std::string>();
    }
    if (m.contains("closed_form") && !m["closed_form"].is_null()) {
      if (!m["closed_form"].is_string()) throw ValidationError(path + ".meta.closed_form: expected a string or null");
      f.closed_form = m["closed_form"].get<std::string>();
    }
  }
  f.grid.s = numbers(field(j, "grid_s", path), path + ".grid_s");
  f.values = numbers(field(j, "values", path), path + ".values");
  f.grid.policy = GridPolicy::Graded;
  try {
    f.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return f;
}

json to_json(const decompose::SequenceFamily& fam) {
  json j;
  j["indices"] = fam.indices;
  json members = json::array();
  for (const auto& m : fam.members) members.push_back(to_json(m));
  j["members"] = std::move(members);
  json meta = json::object();
  for (const auto& [k, v] : fam.meta) meta[k] = v;
  j["meta"] = std::move(meta);
  return j;
}

decompose::SequenceFamily family_from_json(const json& j, const std::string& path) {
  decompose::SequenceFamily fam;
  const json& idx = field(j, "indices", path);
  if (!idx.is_array()) throw ValidationError(path + ".indices: expected an array");
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (!idx[i].is_number_integer())
      throw ValidationError(path + ".indices[" + std::to_string(i) + "]: expected an integer");
    fam.indices.push_back(idx[i].get<long>());
  }
  const json& mem = field(j, "members", path);
  if (!mem.is_array()) throw ValidationError(path + ".members: expected an array");
  for (std::size_t i = 0; i < mem.size(); ++i)
    fam.members.push_back(function_from_json(mem[i], path + ".members[" + std::to_string(i) + "]"));
  if (j.contains("meta") && j["meta"].is_object())
    for (auto it = j["meta"].begin(); it != j["meta"].end(); ++it)
      fam.meta[it.key()] = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
  try {
    fam.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return fam;
}

json to_json(const bubbles::Profile& p) {
  std::vector<double> s, psi;
  if (p.kind() == bubbles::ProfileKind::Sampled) {
    s = p.samples_s();
    for (double y : s) psi.push_back(p(y));
  } else {
    const int n = 400;
    for (int i = 0; i <= n; ++i) {
      const double y = p.s_max() * i / n;
      s.push_back(y);
      psi.push_back(p(y));
    }
  }
  json j;
  j["name"] = p.name();
  j["s"] = vec(s);
  j["psi"] = vec(psi);
  j["deriv_l2"] = p.deriv_l2();
  j["l2_exp_norm"] = p.l2_exp_norm();
  return j;
}

bubbles::Profile profile_from_json(const json& j, const std::string& path) {
  const auto s = numbers(field(j, "s", path), path + ".s");
  const auto psi = numbers(field(j, "psi", path), path + ".psi");
  std::string name = "file";
  if (j.contains("name") && j["name"].is_string()) name = j["name"].get<std::string>();
  try {
    return bubbles::Profile::sampled(s, psi, name);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

json to_json(const orlicz::ConcentrationReport& r) {
  json j;
  j["alpha"] = r.alpha;
  j["pairing_lap"] = r.pairing_lap;
  j["pairing_exp"] = r.pairing_exp;
  j["split"] = {{"lap", {{"inner", r.split_lap[0]}, {"annulus", r.split_lap[1]}, {"outer", r.split_lap[2]}}},
                {"exp", {{"inner", r.split_exp[0]}, {"annulus", r.split_exp[1]}, {"outer", r.split_exp[2]}}}};
  j["phi_at_zero"] = r.phi_at_zero;
  return j;
}

json to_json(const radial::InequalityReport& r) {
  json j;
  j["lap"] = {{"lhs", r.invr_grad}, {"rhs", r.half_lap}, {"slack", r.lap_slack}, {"pass", r.lap_pass}};
  j["pointwise"] = {{"max_ratio", r.pointwise_max}, {"at_r", r.pointwise_at_r}, {"slack", r.pointwise_slack},
                    {"pass", r.pointwise_pass}};
  j["discretization"] = r.discretization;
  j["pass"] = r.pass();
  return j;
}

json to_json(const radial::NormSet& n) {
  return {{"L2", n.l2}, {"GRAD", n.grad}, {"INVR_GRAD", n.invr_grad}, {"LAP", n.lap}, {"H2_SUM", n.h2_sum},
          {"SCHROEDINGER", n.schroedinger}};
}

json to_json(const decompose::DecompositionResult& r) {
  json j;
  json comps = json::array();
  for (const auto& c : r.components) {
    json cj;
    cj["scales"] = vec(c.scales);
    cj["profile"] = to_json(c.profile);
    cj["deriv_l2"] = c.deriv_l2;
    cj["delta_psi"] = c.delta_psi;
    cj["stable"] = c.stable;
    cj["merges"] = c.merges;
    cj["A_before"] = c.A_before;
    comps.push_back(std::move(cj));
  }
  j["components"] = std::move(comps);
  j["A_history"] = vec(r.A_history);
  j["ledger"] = vec(r.ledger);
  json om = json::array();
  for (const auto& row : r.orthogonality_matrix) om.push_back(vec(row));
  j["orthogonality_matrix"] = std::move(om);
  json tails = json::array();
  for (const auto& t : r.hyp3) tails.push_back({{"radius", t.radius}, {"l2_squared", vec(t.l2_squared)}});
  json diag;
  diag["hyp3"] = std::move(tails);
  diag["hyp3_pass"] = r.hyp3_pass;
  json cor = json::array();
  for (const auto& c : r.cor2) cor.push_back({{"lower_ratio", c.lower_ratio}, {"upper_ratio", c.upper_ratio}});
  diag["cor2"] = std::move(cor);
  diag["contracting"] = r.contracting;
  diag["stop_reason"] = r.stop_reason;
  diag["notes"] = r.notes;
  j["diagnostics"] = std::move(diag);
  j["remainder"] = to_json(r.remainder);
  return j;
}

}  // namespace o4d::io
