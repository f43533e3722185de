#pragma once

#include <filesystem>

#include "fcl/context.hpp"

namespace fcl {

/// Raised on malformed lattice or context documents; `line` is 1-based.
class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string& message)
      : std::runtime_error(message), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

/** Lattice documents. Line-oriented; '#' starts a comment, blank lines are
    ignored. Either a single

        builtin <lukasiewicz|godel|boolean> [n]

    line, or an explicit description:

        elements <name>...
        leq <a> <b>            (any number; reflexive-transitive closure is taken)
        tensor <row> <entry>...   (one row per element, |elements| entries each)
        residuum <row> <entry>... (optional; cross-checked against the derived table)
*/
LatticeSpec parse_lattice_document(std::string_view text);

/// Parses "family(n)", "family n", "family:n" or "boolean" into a builtin tag.
std::optional<BuiltinDesc> parse_builtin_descriptor(std::string_view text);

/** Context documents. Same lexical rules. A lattice reference (one of)

        lattice builtin <family> [n]
        lattice file <path>          (relative paths resolve against base_dir)
        ... inline lattice directives as in a lattice document ...

    followed by

        attributes [<label>...]
        object <label> <entry>...    (|attributes| entries per line)
*/
struct ContextDocument {
  std::optional<LatticeSpec> lattice;
  std::optional<std::string> lattice_file;
  std::vector<std::string> attributes;
  std::vector<std::pair<std::string, std::vector<std::string>>> rows;
};

ContextDocument parse_context_document(std::string_view text);

/** Resolves a parsed context document into a validated Context.
    `lattice_override`, when set, wins over any lattice reference in the
    document; a document with neither is an error. */
Context build_context(const ContextDocument& doc,
                      std::shared_ptr<const Lattice> lattice_override,
                      const std::filesystem::path& base_dir);

/// Convenience: read + parse + build. Throws ParseError / std::runtime_error on I/O.
Lattice load_lattice_file(const std::filesystem::path& path);
Context load_context_file(const std::filesystem::path& path,
                          std::shared_ptr<const Lattice> lattice_override = nullptr);

/** Canonical serializations. parse(serialize(x)) reproduces x exactly;
    serializing a parse of a canonical document reproduces the document
    byte for byte. Builtin lattices serialize as their builtin line. */
std::string serialize_lattice(const Lattice& lattice);
std::string serialize_context(const Context& ctx);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace fcl
