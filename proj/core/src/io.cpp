#include "kazhdanlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace kazhdanlab {

using nlohmann::json;

namespace {

json parse_or_throw(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("JSON parse error: ") + e.what());
  }
}

GroupSpec::Kind kind_from_string(const std::string& s) {
  if (s == "permutation") return GroupSpec::Kind::permutation;
  if (s == "cyclic") return GroupSpec::Kind::cyclic;
  if (s == "dihedral") return GroupSpec::Kind::dihedral;
  if (s == "builtin") return GroupSpec::Kind::builtin;
  throw ConfigError("field 'kind': expected permutation|cyclic|dihedral|builtin, got '" +
                    s + "'");
}

std::string kind_to_string(GroupSpec::Kind k) {
  switch (k) {
    case GroupSpec::Kind::permutation: return "permutation";
    case GroupSpec::Kind::cyclic: return "cyclic";
    case GroupSpec::Kind::dihedral: return "dihedral";
    case GroupSpec::Kind::builtin: return "builtin";
  }
  return "?";
}

}  // namespace

GroupSpec parse_group_spec(const std::string& text) {
  const json j = parse_or_throw(text);
  if (!j.is_object()) throw ConfigError("group spec: expected a JSON object");
  GroupSpec spec;
  if (!j.contains("kind") || !j["kind"].is_string())
    throw ConfigError("field 'kind': required string");
  spec.kind = kind_from_string(j["kind"].get<std::string>());
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ConfigError("field 'name': expected string");
    spec.name = j["name"].get<std::string>();
  }
  if (j.contains("symmetrize")) {
    if (!j["symmetrize"].is_boolean())
      throw ConfigError("field 'symmetrize': expected bool");
    spec.symmetrize = j["symmetrize"].get<bool>();
  }
  if (j.contains("closure_cap")) {
    if (!j["closure_cap"].is_number_integer())
      throw ConfigError("field 'closure_cap': expected integer");
    spec.closure_cap = j["closure_cap"].get<int>();
  }
  if (j.contains("n")) {
    if (!j["n"].is_number_integer()) throw ConfigError("field 'n': expected integer");
    spec.n = j["n"].get<int>();
  }
  if (j.contains("generators")) {
    if (!j["generators"].is_array())
      throw ConfigError("field 'generators': expected array of permutations");
    for (const auto& gen : j["generators"]) {
      if (!gen.is_array()) throw ConfigError("field 'generators': each entry is an array");
      std::vector<int> p;
      for (const auto& v : gen) {
        if (!v.is_number_integer())
          throw ConfigError("field 'generators': permutation entries are integers");
        p.push_back(v.get<int>());
      }
      spec.generators.push_back(std::move(p));
    }
  }
  if (spec.kind == GroupSpec::Kind::permutation && spec.generators.empty())
    throw ConfigError("field 'generators': required for kind 'permutation'");
  if ((spec.kind == GroupSpec::Kind::cyclic || spec.kind == GroupSpec::Kind::dihedral) &&
      spec.n < 1)
    throw ConfigError("field 'n': required positive integer for cyclic/dihedral");
  if (spec.kind == GroupSpec::Kind::builtin && spec.name.empty())
    throw ConfigError("field 'name': required for kind 'builtin'");
  return spec;
}

GroupSpec load_group_spec(const std::string& path) {
  return parse_group_spec(read_file(path));
}

std::string group_spec_to_json(const GroupSpec& spec) {
  json j;
  j["name"] = spec.name;
  j["kind"] = kind_to_string(spec.kind);
  j["symmetrize"] = spec.symmetrize;
  j["closure_cap"] = spec.closure_cap;
  if (spec.n > 0) j["n"] = spec.n;
  if (!spec.generators.empty()) j["generators"] = spec.generators;
  return j.dump(2);
}

UnitaryRep parse_rep(GroupPtr group, const std::string& text) {
  const json j = parse_or_throw(text);
  if (!j.is_object()) throw ConfigError("rep: expected a JSON object");
  if (j.contains("group") && j["group"].is_string() &&
      j["group"].get<std::string>() != group->name())
    throw ConfigError("rep field 'group': names '" + j["group"].get<std::string>() +
                      "' but the loaded group is '" + group->name() + "'");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw ConfigError("rep field 'dim': required integer");
  const int d = j["dim"].get<int>();
  if (!j.contains("generator_matrices") || !j["generator_matrices"].is_array())
    throw ConfigError("rep field 'generator_matrices': required array");
  const auto& gm = j["generator_matrices"];
  if (gm.size() != group->gen_set().size())
    throw ConfigError("rep field 'generator_matrices': need one matrix per gen_set entry (" +
                      std::to_string(group->gen_set().size()) + ")");
  std::vector<Mat> gens;
  for (const auto& mat : gm) {
    if (!mat.is_array() || static_cast<int>(mat.size()) != d)
      throw ConfigError("rep: each generator matrix needs 'dim' rows");
    Mat m(d, d);
    for (int r = 0; r < d; ++r) {
      const auto& row = mat[r];
      if (!row.is_array() || static_cast<int>(row.size()) != d)
        throw ConfigError("rep: each matrix row needs 'dim' [re, im] entries");
      for (int c = 0; c < d; ++c) {
        const auto& z = row[c];
        if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
          throw ConfigError("rep: matrix entries are [re, im] pairs");
        m(r, c) = cd(z[0].get<double>(), z[1].get<double>());
      }
    }
    gens.push_back(std::move(m));
  }
  return UnitaryRep::from_generator_matrices(std::move(group), gens);
}

UnitaryRep load_rep(GroupPtr group, const std::string& path) {
  return parse_rep(std::move(group), read_file(path));
}

std::string rep_to_json(const UnitaryRep& rep) {
  json j;
  j["group"] = rep.group()->name();
  j["dim"] = rep.dim();
  json gens = json::array();
  for (int s : rep.group()->gen_set()) {
    const Mat& m = rep.matrix(s);
    json mat = json::array();
    for (int r = 0; r < rep.dim(); ++r) {
      json row = json::array();
      for (int c = 0; c < rep.dim(); ++c)
        row.push_back({m(r, c).real(), m(r, c).imag()});
      mat.push_back(std::move(row));
    }
    gens.push_back(std::move(mat));
  }
  j["generator_matrices"] = std::move(gens);
  return j.dump(2);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string stable_hash_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace kazhdanlab
