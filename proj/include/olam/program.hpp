#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "olam/checker.hpp"
#include "olam/oracle.hpp"
#include "olam/reducer.hpp"
#include "olam/surface.hpp"
#include "olam/trace.hpp"

namespace olam {

/// A loaded, fully checked program with its oracles.
class Program {
 public:
  /// Reads the program, the oracle files it imports (relative to its own
  /// directory) and `extra_oracles`. Errors: Io, every surface error,
  /// oracle validation errors, typing errors, MissingMain.
  static Program load(const std::filesystem::path& path,
                      const std::vector<std::filesystem::path>& extra_oracles = {});
  /// Same checks on in-memory text; imports are not followed.
  static Program from_text(std::string_view program, std::string_view oracles = {},
                           std::string name = "<input>");

  Program(Program&&) noexcept;
  Program& operator=(Program&&) noexcept;
  ~Program();

  const std::string& name() const;
  const SourceFile& source() const;
  const OracleRegistry& oracles() const;
  const TypeChecker& checker() const;
  const Environment& globals() const;
  const Reducer& reducer() const;
  const TraceEngine& engine() const;

  /// `main` with every definition inlined.
  const Term& main() const;
  const TypeCon& main_type() const;

  struct TypedDefinition {
    Name name;
    TypeCon type;
  };
  const std::vector<TypedDefinition>& definition_types() const;

  /// Inlines definitions into a term written against this program.
  Term resolve(const Term& t) const;
  /// Type of a closed term in the global environment.
  TypeCon type_of(const Term& t) const;

 private:
  struct State;
  explicit Program(std::unique_ptr<State> s);
  static Program build(std::string name, SourceFile source, std::vector<OracleDef> oracles);
  std::unique_ptr<State> s_;
};

/// Reads a whole file. Throws Io.
std::string read_file(const std::filesystem::path& path);

}  // namespace olam
