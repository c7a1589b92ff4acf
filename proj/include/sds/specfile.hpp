#pragma once

#include <map>
#include <string>

#include "sds/automaton.hpp"
#include "sds/shadowing.hpp"

namespace sds {

// Parsed .sds file: named sections with resolved cross-references.
struct SpecFile {
  std::map<std::string, Group> groups;
  std::map<std::string, Sft> sfts;
  std::map<std::string, std::string> sft_group;  // sft -> group name
  std::map<std::string, ColoringAutomaton> automata;
  std::map<std::string, std::string> automaton_group;
  std::map<std::string, SoficPresentation> presentations;

  struct SystemSpec {
    std::vector<std::string> level_names;
    InverseSystem system;
  };
  std::map<std::string, SystemSpec> systems;

  struct OrbitSpec {
    std::string sft_name;
    PseudoOrbit orbit;
  };
  std::map<std::string, OrbitSpec> orbits;
};

// Line-oriented parser; all errors carry 1-based line numbers. Sections may
// only reference names defined earlier in the file.
SpecFile parse_spec(const std::string& text);
SpecFile load_spec_file(const std::string& path);

// Canonical text form; serialize(parse(serialize(parse(t)))) is stable.
std::string serialize_spec(const SpecFile& f);

}  // namespace sds
