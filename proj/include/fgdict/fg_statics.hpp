#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fgdict/common.hpp"
#include "fgdict/fg_ast.hpp"

namespace fgdict::fg {

struct WfViolation {
  enum class Kind {
    RecursiveStruct,
    DupField,
    DupMethodSpec,
    DupReceiverMethod,
    UndefinedType,
    DupTypeDecl,
    ReceiverNotStruct,
    NameSetOverlap,
  };

  Kind kind;
  std::string where;   // declaration or type name
  std::string detail;

  std::string to_string() const;
};

const char* wf_kind_name(WfViolation::Kind k);

// Indexed view over a program's declarations. Immutable after build; all
// lookups are O(log n) map lookups against the original declaration order.
class DeclTable {
 public:
  static Expected<DeclTable, std::vector<WfViolation>> build(Program program);

  const Program& program() const { return *program_; }

  bool is_declared(const TypeName& t) const { return by_name_.count(t) != 0; }
  bool is_struct(const TypeName& t) const;
  bool is_interface(const TypeName& t) const;
  const TypeDecl* type_decl(const TypeName& t) const;

  // Struct names in declaration order (drives downcast clause order).
  const std::vector<TypeName>& struct_order() const { return struct_order_; }

  // Method declarations in declaration order (drives binding order).
  const std::vector<const MethodDecl*>& method_order() const { return method_order_; }

  // methods(t): interface specs in declaration order, or the specs of all
  // method declarations with receiver t in declaration order.
  Expected<std::vector<MethodSpec>, WfViolation> methods(const TypeName& t) const;

  // Structural subtyping: t <: u.
  Expected<bool, WfViolation> subtype(const TypeName& t, const TypeName& u) const;

  // The unique declaration for (m, receiver); uniqueness is forced at build.
  Expected<const MethodDecl*, WfViolation> method_lookup(const std::string& method,
                                                         const TypeName& receiver) const;

 private:
  std::shared_ptr<const Program> program_;
  std::map<TypeName, const TypeDecl*> by_name_;
  std::map<std::pair<std::string, TypeName>, const MethodDecl*> methods_by_receiver_;
  std::map<TypeName, std::vector<MethodSpec>> spec_sets_;
  std::vector<TypeName> struct_order_;
  std::vector<const MethodDecl*> method_order_;
};

struct CheckOptions {
  // When set, struct cycles that pass through interface-typed fields are
  // also rejected; by default only struct-to-struct edges count, since
  // interface values are boxed by the translation.
  bool strict_interface_cycles = false;
};

// Empty result iff the table satisfies the well-formedness conditions:
// non-recursive structs, distinct fields, distinct interface method names,
// struct receivers, and every mentioned type declared.
std::vector<WfViolation> check_conditions(const DeclTable& table, CheckOptions opts = {});

// Warnings for interface/receiver spec pairs that would be equal if
// parameter names were ignored: subtyping compares specs literally, so such
// pairs are a likely authoring mistake.
std::vector<std::string> param_name_lint(const DeclTable& table);

}  // namespace fgdict::fg
