#include "olam/program.hpp"

#include <fstream>
#include <sstream>

#include "olam/constructor.hpp"
#include "olam/overloaded.hpp"

namespace olam {

struct Program::State {
  std::string name;
  SourceFile source;
  OracleRegistry oracles;
  std::unique_ptr<TypeChecker> checker;
  Environment globals;
  std::unique_ptr<Reducer> reducer;
  std::unique_ptr<TraceEngine> engine;
  Term main;
  TypeCon main_type;
  std::vector<TypedDefinition> types;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::vector<OracleDef> oracles_from(const std::filesystem::path& path) {
  std::string text = read_file(path);
  try {
    return parse_oracles(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.filename().string() + ": " + e.what(), e.pos());
  }
}

}  // namespace

Program::Program(std::unique_ptr<State> s) : s_(std::move(s)) {}
Program::Program(Program&&) noexcept = default;
Program& Program::operator=(Program&&) noexcept = default;
Program::~Program() = default;

Program Program::load(const std::filesystem::path& path, const std::vector<std::filesystem::path>& extra_oracles) {
  SourceFile source = parse_program(read_file(path));
  std::vector<OracleDef> defs;
  for (auto& imp : source.imports) {
    auto more = oracles_from(path.parent_path() / imp.path);
    defs.insert(defs.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  }
  for (auto& p : extra_oracles) {
    auto more = oracles_from(p);
    defs.insert(defs.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  }
  return build(path.filename().string(), std::move(source), std::move(defs));
}

Program Program::from_text(std::string_view program, std::string_view oracles, std::string name) {
  return build(std::move(name), parse_program(program), parse_oracles(oracles));
}

Program Program::build(std::string name, SourceFile source, std::vector<OracleDef> oracles) {
  auto s = std::make_unique<State>();
  s->name = std::move(name);
  s->source = std::move(source);
  for (auto& d : oracles) s->oracles.add(std::move(d));
  s->checker = std::make_unique<TypeChecker>(s->oracles);

  for (auto& decl : s->source.declarations) {
    std::visit(overloaded{
                   [&](const AtomDecl& a) {
                     s->checker->check_kind(s->globals, a.kind);
                     s->globals = s->globals.with_con(a.name, a.kind);
                   },
                   [&](const ConstDecl& c) {
                     s->checker->check_is_type(s->globals, c.type);
                     s->globals = s->globals.with_term(c.name, normalize_con(c.type));
                   },
               },
               decl);
  }
  for (auto& n : s->oracles.names()) validate_oracle(s->oracles.get(n), *s->checker, s->globals);

  const Definition* main_def = nullptr;
  for (auto& d : s->source.definitions) {
    Term body = s->source.expanded(d.name);
    TypeCon ty = s->checker->infer_type(s->globals, body);
    if (d.ascription) {
      s->checker->check_is_type(s->globals, *d.ascription);
      if (!con_equiv(ty, *d.ascription))
        throw Error(ErrorCode::TypeMismatch,
                    "'" + d.name + "' is declared as " + print_type(*d.ascription) + " but has type " + print_type(ty),
                    d.pos);
    }
    s->types.push_back(TypedDefinition{d.name, ty});
    if (d.name == "main") {
      main_def = &d;
      s->main = body;
      s->main_type = ty;
    }
  }
  if (!main_def) throw Error(ErrorCode::MissingMain, "the program has no 'main' definition");
  for (auto& v : free_term_vars(s->main))
    if (!s->globals.contains(v))
      throw Error(ErrorCode::UnboundVar, "'main' mentions unbound '" + v + "'", main_def->pos);

  s->reducer = std::make_unique<Reducer>(*s->checker, s->globals);
  s->engine = std::make_unique<TraceEngine>(*s->reducer);
  return Program(std::move(s));
}

const std::string& Program::name() const { return s_->name; }
const SourceFile& Program::source() const { return s_->source; }
const OracleRegistry& Program::oracles() const { return s_->oracles; }
const TypeChecker& Program::checker() const { return *s_->checker; }
const Environment& Program::globals() const { return s_->globals; }
const Reducer& Program::reducer() const { return *s_->reducer; }
const TraceEngine& Program::engine() const { return *s_->engine; }
const Term& Program::main() const { return s_->main; }
const TypeCon& Program::main_type() const { return s_->main_type; }
const std::vector<Program::TypedDefinition>& Program::definition_types() const { return s_->types; }

Term Program::resolve(const Term& t) const {
  Term out = t;
  auto& defs = s_->source.definitions;
  for (std::size_t i = defs.size(); i-- > 0;)
    if (free_term_vars(out).contains(defs[i].name)) out = substitute_term(out, defs[i].name, s_->source.expanded(defs[i].name));
  return out;
}

TypeCon Program::type_of(const Term& t) const { return s_->checker->infer_type(s_->globals, t); }

}  // namespace olam
