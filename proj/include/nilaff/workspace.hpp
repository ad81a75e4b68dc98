#ifndef NILAFF_WORKSPACE_HPP
#define NILAFF_WORKSPACE_HPP

#include "nilaff/morphism.hpp"

namespace nilaff {

/// Named collection of algebras, group presentations and morphisms loaded
/// from one or more workspace files. All cross-references are resolved and
/// every invariant is validated at load time.
struct Workspace {
  std::vector<std::pair<std::string, AlgebraRef>> algebras;
  std::vector<std::pair<std::string, GroupPresentation>> groups;
  struct MorphismEntry {
    std::string name;
    std::string source;
    std::string target;
    GroupMorphism value;
  };
  std::vector<MorphismEntry> morphisms;
  // group name -> algebra name, for serialization
  std::vector<std::pair<std::string, std::string>> group_algebras;

  const AlgebraRef& algebra(const std::string& name) const;
  const GroupPresentation& group(const std::string& name) const;
  const GroupMorphism& morphism(const std::string& name) const;
  bool has_group(const std::string& name) const;
};

/// Parses a workspace file; diagnostics carry the line number.
Workspace parse_workspace(const std::string& text);
/// Parses and merges several files.
Workspace parse_workspace_files(const std::vector<std::string>& paths);

/// Canonical serialization; parsing it back yields a structurally identical
/// workspace, and serializing again is byte-identical.
std::string serialize_workspace(const Workspace& w);

}  // namespace nilaff

#endif
