#pragma once

#include <string>

#include "kazhdanlab/rep.hpp"

namespace kazhdanlab {

/// GroupSpec JSON:
///   {"name": str, "kind": "permutation"|"cyclic"|"dihedral"|"builtin",
///    "generators": [[int,...],...], "n": int, "symmetrize": bool,
///    "closure_cap": int}
/// "generators" applies to the permutation kind, "n" to cyclic/dihedral.
/// Parse errors throw ConfigError naming the offending field.
GroupSpec parse_group_spec(const std::string& json_text);
GroupSpec load_group_spec(const std::string& path);
std::string group_spec_to_json(const GroupSpec& spec);

/// Representation JSON:
///   {"group": name, "dim": d, "generator_matrices": [gen][row][col] = [re, im]}
/// with one matrix per gen_set entry, extended to all elements via BFS words.
UnitaryRep parse_rep(GroupPtr group, const std::string& json_text);
UnitaryRep load_rep(GroupPtr group, const std::string& path);
std::string rep_to_json(const UnitaryRep& rep);

/// Deterministic float formatting used in CSV reports ("%.17g").
std::string fmt(double x);

/// FNV-1a 64 as a stable config hash, hex-encoded.
std::string stable_hash_hex(const std::string& text);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace kazhdanlab
