#include "fcl/io.hpp"

#include <fstream>
#include <sstream>

namespace fcl {

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line;
    line.number = number;
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r') ++i;
      if (i > start) line.tokens.emplace_back(raw.substr(start, i - start));
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

[[noreturn]] void parse_fail(int line, const std::string& message) {
  throw ParseError(line, "line " + std::to_string(line) + ": " + message);
}

BuiltinDesc parse_builtin_tokens(const Line& line, std::size_t first) {
  if (line.tokens.size() <= first) parse_fail(line.number, "builtin needs a family name");
  const std::string& family = line.tokens[first];
  if (family == "boolean") {
    if (line.tokens.size() > first + 1)
      parse_fail(line.number, "boolean takes no size argument");
    return {TNormFamily::lukasiewicz, 2};
  }
  auto fam = tnorm_from_string(family);
  if (!fam) parse_fail(line.number, "unknown builtin family: " + family);
  if (line.tokens.size() != first + 2)
    parse_fail(line.number, "builtin " + family + " needs a chain size");
  int n = 0;
  try {
    n = std::stoi(line.tokens[first + 1]);
  } catch (const std::exception&) {
    parse_fail(line.number, "chain size is not a number: " + line.tokens[first + 1]);
  }
  if (n < 2) parse_fail(line.number, "chain size must be at least 2");
  return {*fam, n};
}

// Collects lattice directives shared between lattice documents and inline
// lattice blocks of context documents. Returns true if the line was consumed.
bool consume_lattice_line(const Line& line, LatticeSpec& spec, bool& saw_any) {
  const std::string& head = line.tokens[0];
  if (head == "builtin") {
    spec.builtin = parse_builtin_tokens(line, 1);
    saw_any = true;
    return true;
  }
  if (head == "elements") {
    if (!spec.elements.empty()) parse_fail(line.number, "duplicate elements line");
    spec.elements.assign(line.tokens.begin() + 1, line.tokens.end());
    if (spec.elements.empty()) parse_fail(line.number, "elements line lists no names");
    saw_any = true;
    return true;
  }
  if (head == "leq") {
    if (line.tokens.size() != 3) parse_fail(line.number, "leq needs exactly two element names");
    spec.leq.emplace_back(line.tokens[1], line.tokens[2]);
    saw_any = true;
    return true;
  }
  if (head == "tensor" || head == "residuum") {
    if (spec.elements.empty())
      parse_fail(line.number, head + " rows must come after the elements line");
    auto& table = head == "tensor" ? spec.tensor : spec.residuum;
    if (line.tokens.size() != spec.elements.size() + 2)
      parse_fail(line.number,
                 head + " row needs a row element followed by " +
                     std::to_string(spec.elements.size()) + " entries");
    const std::size_t row = table.size();
    if (row >= spec.elements.size()) parse_fail(line.number, "too many " + head + " rows");
    if (line.tokens[1] != spec.elements[row])
      parse_fail(line.number, head + " rows must follow the elements order; expected row " +
                                  spec.elements[row]);
    table.emplace_back(line.tokens.begin() + 2, line.tokens.end());
    saw_any = true;
    return true;
  }
  return false;
}

void finish_lattice_spec(const LatticeSpec& spec) {
  if (spec.builtin) {
    if (!spec.elements.empty() || !spec.leq.empty() || !spec.tensor.empty() ||
        !spec.residuum.empty())
      throw ParseError(0, "builtin lattices take no explicit tables");
    return;
  }
  if (spec.elements.empty()) throw ParseError(0, "lattice description lists no elements");
  if (spec.tensor.size() != spec.elements.size())
    throw ParseError(0, "tensor table is missing rows");
  if (!spec.residuum.empty() && spec.residuum.size() != spec.elements.size())
    throw ParseError(0, "residuum table is missing rows");
}

}  // namespace

std::optional<BuiltinDesc> parse_builtin_descriptor(std::string_view text) {
  // Accepts family(n), family:n, "family n" and plain "boolean".
  std::string normalized(text);
  for (char& c : normalized)
    if (c == '(' || c == ')' || c == ':') c = ' ';
  Line line;
  line.number = 0;
  std::istringstream in(normalized);
  std::string tok;
  while (in >> tok) line.tokens.push_back(tok);
  if (line.tokens.empty()) return std::nullopt;
  try {
    return parse_builtin_tokens(line, 0);
  } catch (const ParseError&) {
    return std::nullopt;
  }
}

LatticeSpec parse_lattice_document(std::string_view text) {
  LatticeSpec spec;
  bool saw_any = false;
  for (const Line& line : tokenize(text)) {
    if (!consume_lattice_line(line, spec, saw_any))
      parse_fail(line.number, "unexpected directive in a lattice document: " + line.tokens[0]);
  }
  if (!saw_any) throw ParseError(0, "empty lattice document");
  finish_lattice_spec(spec);
  return spec;
}

ContextDocument parse_context_document(std::string_view text) {
  ContextDocument doc;
  LatticeSpec inline_spec;
  bool saw_lattice = false;
  bool saw_attributes = false;

  for (const Line& line : tokenize(text)) {
    const std::string& head = line.tokens[0];
    if (head == "lattice") {
      if (line.tokens.size() < 2) parse_fail(line.number, "lattice line needs a reference");
      if (line.tokens[1] == "builtin") {
        inline_spec.builtin = parse_builtin_tokens(line, 2);
        saw_lattice = true;
      } else if (line.tokens[1] == "file") {
        if (line.tokens.size() != 3) parse_fail(line.number, "lattice file needs one path");
        doc.lattice_file = line.tokens[2];
      } else {
        parse_fail(line.number, "lattice reference must be 'builtin' or 'file'");
      }
      continue;
    }
    if (head == "attributes") {
      if (saw_attributes) parse_fail(line.number, "duplicate attributes line");
      saw_attributes = true;
      doc.attributes.assign(line.tokens.begin() + 1, line.tokens.end());
      continue;
    }
    if (head == "object") {
      if (!saw_attributes) parse_fail(line.number, "object rows must come after attributes");
      if (line.tokens.size() != doc.attributes.size() + 2)
        parse_fail(line.number, "object row needs a label followed by " +
                                    std::to_string(doc.attributes.size()) + " entries");
      doc.rows.emplace_back(line.tokens[1],
                            std::vector<std::string>(line.tokens.begin() + 2, line.tokens.end()));
      continue;
    }
    if (consume_lattice_line(line, inline_spec, saw_lattice)) continue;
    parse_fail(line.number, "unexpected directive in a context document: " + head);
  }

  if (!saw_attributes) throw ParseError(0, "context document has no attributes line");
  if (saw_lattice) {
    if (doc.lattice_file)
      throw ParseError(0, "context document has both an inline lattice and a lattice file");
    finish_lattice_spec(inline_spec);
    doc.lattice = std::move(inline_spec);
  }
  return doc;
}

Context build_context(const ContextDocument& doc,
                      std::shared_ptr<const Lattice> lattice_override,
                      const std::filesystem::path& base_dir) {
  std::shared_ptr<const Lattice> lattice = std::move(lattice_override);
  if (!lattice) {
    if (doc.lattice) {
      lattice = std::make_shared<const Lattice>(Lattice::validated(*doc.lattice));
    } else if (doc.lattice_file) {
      std::filesystem::path path(*doc.lattice_file);
      if (path.is_relative()) path = base_dir / path;
      lattice = std::make_shared<const Lattice>(load_lattice_file(path));
    } else {
      throw ParseError(0, "context document names no lattice and none was supplied");
    }
  }

  std::vector<std::string> objects;
  std::vector<Elem> entries;
  objects.reserve(doc.rows.size());
  entries.reserve(doc.rows.size() * doc.attributes.size());
  for (const auto& [label, cells] : doc.rows) {
    objects.push_back(label);
    for (const std::string& cell : cells) {
      auto e = lattice->element_index(cell);
      if (!e) throw ParseError(0, "unknown element name in row " + label + ": " + cell);
      entries.push_back(*e);
    }
  }
  return Context(lattice, std::move(objects), doc.attributes, std::move(entries));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (!in.good() && !in.eof()) throw std::runtime_error("cannot read " + path.string());
  return std::move(buffer).str();
}

Lattice load_lattice_file(const std::filesystem::path& path) {
  return Lattice::validated(parse_lattice_document(read_text_file(path)));
}

Context load_context_file(const std::filesystem::path& path,
                          std::shared_ptr<const Lattice> lattice_override) {
  ContextDocument doc = parse_context_document(read_text_file(path));
  return build_context(doc, std::move(lattice_override), path.parent_path());
}

namespace {

void serialize_lattice_lines(const Lattice& lattice, std::ostringstream& out) {
  if (lattice.builtin()) {
    out << "builtin " << to_string(lattice.builtin()->family) << ' ' << lattice.builtin()->size
        << '\n';
    return;
  }
  out << "elements";
  for (const auto& name : lattice.element_names()) out << ' ' << name;
  out << '\n';
  for (int a = 0; a < lattice.size(); ++a)
    for (int b = 0; b < lattice.size(); ++b)
      if (a != b && lattice.leq(a, b))
        out << "leq " << lattice.element_name(a) << ' ' << lattice.element_name(b) << '\n';
  for (int a = 0; a < lattice.size(); ++a) {
    out << "tensor " << lattice.element_name(a);
    for (int b = 0; b < lattice.size(); ++b) out << ' ' << lattice.element_name(lattice.tensor(a, b));
    out << '\n';
  }
}

}  // namespace

std::string serialize_lattice(const Lattice& lattice) {
  std::ostringstream out;
  serialize_lattice_lines(lattice, out);
  return std::move(out).str();
}

std::string serialize_context(const Context& ctx) {
  std::ostringstream out;
  if (ctx.lattice().builtin()) {
    out << "lattice builtin " << to_string(ctx.lattice().builtin()->family) << ' '
        << ctx.lattice().builtin()->size << '\n';
  } else {
    serialize_lattice_lines(ctx.lattice(), out);
  }
  out << "attributes";
  for (const auto& label : ctx.attributes()) out << ' ' << label;
  out << '\n';
  for (int x = 0; x < ctx.object_count(); ++x) {
    out << "object " << ctx.objects()[static_cast<std::size_t>(x)];
    for (int y = 0; y < ctx.attribute_count(); ++y)
      out << ' ' << ctx.lattice().element_name(ctx.at(x, y));
    out << '\n';
  }
  return std::move(out).str();
}

}  // namespace fcl
