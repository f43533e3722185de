#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fcl/io.hpp"
#include "fcl/reduct.hpp"
#include "json.hpp"

using nlohmann::ordered_json;
using namespace fcl;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFalse = 1;
constexpr int kExitInvalidLattice = 2;
constexpr int kExitParse = 3;
constexpr int kExitBudget = 4;
constexpr int kExitLabels = 5;
constexpr int kSchemaVersion = 1;

struct UnknownLabelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string lattice_path;
  std::string builtin_desc;
  std::string context_path;
  std::string mode_name = "fca";
  std::string method_name = "auto";
  std::uint64_t budget = default_budget;
  bool negate = false;
  std::string format = "text";
  std::string out_path;
  std::string objects_csv;
  std::string attributes_csv;
  bool objects_given = false;
  bool attributes_given = false;
};

void add_format_options(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", opts.out_path, "Write the result to a file instead of stdout");
}

void add_lattice_options(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--lattice", opts.lattice_path, "Path to a lattice file");
  cmd->add_option("--builtin", opts.builtin_desc,
                  "Builtin lattice, e.g. lukasiewicz(3), godel(4), boolean");
}

void add_context_options(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--context", opts.context_path, "Path to a context file")->required();
  add_lattice_options(cmd, opts);
  cmd->add_flag("--negate", opts.negate, "Work on the entrywise negation of the context");
}

void add_mode_method_options(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--mode", opts.mode_name, "Concept lattice flavor")
      ->check(CLI::IsMember({"fca", "rst"}))
      ->capture_default_str();
  cmd->add_option("--method", opts.method_name, "Decision method")
      ->check(CLI::IsMember({"exhaustive", "generators", "auto"}))
      ->capture_default_str();
  cmd->add_option("--budget", opts.budget, "Candidate budget for exhaustive enumeration")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void emit(const CommonOptions& opts, const std::string& text) {
  if (opts.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opts.out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + opts.out_path);
  out << text;
}

std::shared_ptr<const Lattice> load_lattice_override(const CommonOptions& opts) {
  if (!opts.builtin_desc.empty()) {
    auto desc = parse_builtin_descriptor(opts.builtin_desc);
    if (!desc) throw ParseError(0, "unrecognized builtin descriptor: " + opts.builtin_desc);
    return std::make_shared<const Lattice>(Lattice::chain(desc->size, desc->family));
  }
  if (!opts.lattice_path.empty())
    return std::make_shared<const Lattice>(load_lattice_file(opts.lattice_path));
  return nullptr;
}

Context load_context(const CommonOptions& opts) {
  Context ctx = load_context_file(opts.context_path, load_lattice_override(opts));
  return opts.negate ? ctx.negated() : ctx;
}

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

Selector resolve_selector(const Context& ctx, const CommonOptions& opts) {
  Selector sel = ctx.full_selector();
  if (opts.objects_given) {
    sel.objects.clear();
    for (const std::string& label : split_csv(opts.objects_csv)) {
      auto i = ctx.object_index(label);
      if (!i) throw UnknownLabelError("unknown object label: " + label);
      sel.objects.push_back(*i);
    }
    std::sort(sel.objects.begin(), sel.objects.end());
    sel.objects.erase(std::unique(sel.objects.begin(), sel.objects.end()), sel.objects.end());
  }
  if (opts.attributes_given) {
    sel.attributes.clear();
    for (const std::string& label : split_csv(opts.attributes_csv)) {
      auto i = ctx.attribute_index(label);
      if (!i) throw UnknownLabelError("unknown attribute label: " + label);
      sel.attributes.push_back(*i);
    }
    std::sort(sel.attributes.begin(), sel.attributes.end());
    sel.attributes.erase(std::unique(sel.attributes.begin(), sel.attributes.end()),
                         sel.attributes.end());
  }
  return sel;
}

std::string lattice_display(const Lattice& lat) {
  if (lat.builtin())
    return std::string(to_string(lat.builtin()->family)) + "(" +
           std::to_string(lat.builtin()->size) + ")";
  return "explicit (" + std::to_string(lat.size()) + " elements)";
}

ordered_json lattice_json(const Lattice& lat) {
  ordered_json j;
  if (lat.builtin()) {
    j["builtin"] = to_string(lat.builtin()->family);
    j["size"] = lat.builtin()->size;
  }
  j["elements"] = lat.element_names();
  return j;
}

ordered_json subset_json(const std::vector<std::string>& labels, const LSubset& values,
                         const Lattice& lat) {
  ordered_json j = ordered_json::object();
  for (std::size_t i = 0; i < values.size(); ++i) j[labels[i]] = lat.element_name(values[i]);
  return j;
}

std::string subset_display(const std::vector<std::string>& labels, const LSubset& values,
                           const Lattice& lat) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!out.empty()) out += " ";
    out += labels[i] + "=" + lat.element_name(values[i]);
  }
  return out.empty() ? "(empty carrier)" : out;
}

std::string labels_of(const std::vector<std::string>& all, std::span<const int> kept) {
  std::string out;
  for (int i : kept) {
    if (!out.empty()) out += " ";
    out += all[static_cast<std::size_t>(i)];
  }
  return out.empty() ? "(none)" : out;
}

ordered_json kept_json(const std::vector<std::string>& all, std::span<const int> kept) {
  ordered_json j = ordered_json::array();
  for (int i : kept) j.push_back(all[static_cast<std::size_t>(i)]);
  return j;
}

ordered_json context_json(const Context& ctx) {
  ordered_json j;
  j["lattice"] = lattice_json(ctx.lattice());
  j["objects"] = ctx.objects();
  j["attributes"] = ctx.attributes();
  ordered_json rows = ordered_json::array();
  for (int x = 0; x < ctx.object_count(); ++x) {
    ordered_json row = ordered_json::array();
    for (int y = 0; y < ctx.attribute_count(); ++y)
      row.push_back(ctx.lattice().element_name(ctx.at(x, y)));
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

// ---- lattice-validate ----------------------------------------------------

int cmd_lattice_validate(const CommonOptions& opts) {
  std::shared_ptr<const Lattice> lat;
  try {
    lat = load_lattice_override(opts);
    if (!lat) throw ParseError(0, "lattice-validate needs --lattice or --builtin");
  } catch (const LatticeError& e) {
    // The defect report is the command's result.
    if (opts.format == "json") {
      ordered_json j;
      j["schema_version"] = kSchemaVersion;
      j["command"] = "lattice-validate";
      j["valid"] = false;
      j["defect"] = to_string(e.defect());
      j["message"] = e.what();
      emit(opts, j.dump(2) + "\n");
    } else {
      emit(opts, "axioms: violated " + std::string(e.what()) + "\n");
    }
    return kExitInvalidLattice;
  }

  if (opts.format == "json") {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "lattice-validate";
    j["lattice"] = lattice_json(*lat);
    j["valid"] = true;
    j["double_negation"] = lat->satisfies_dne();
    if (auto w = lat->dne_witness()) j["double_negation_witness"] = lat->element_name(*w);
    emit(opts, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "lattice: " << lattice_display(*lat) << "\n";
    out << "axioms: ok\n";
    if (lat->satisfies_dne())
      out << "double negation: holds\n";
    else
      out << "double negation: fails (witness: " << lat->element_name(*lat->dne_witness())
          << ")\n";
    emit(opts, out.str());
  }
  return kExitOk;
}

// ---- concepts --------------------------------------------------------------

int cmd_concepts(const CommonOptions& opts) {
  Context ctx = load_context(opts);
  const Mode mode = *mode_from_string(opts.mode_name);
  const Method method = *method_from_string(opts.method_name);
  Strategy strategy = Strategy::generators;
  if (method == Method::exhaustive)
    strategy = Strategy::naive;
  else if (method == Method::auto_select &&
           count_subsets(ctx.lattice().size(), ctx.object_count()) <= opts.budget)
    strategy = Strategy::naive;

  ConceptLattice cl = enumerate_concepts(ctx, mode, strategy, opts.budget);
  const Lattice& lat = ctx.lattice();

  if (opts.format == "json") {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "concepts";
    j["mode"] = to_string(mode);
    j["strategy"] = to_string(strategy);
    j["lattice"] = lattice_json(lat);
    j["objects"] = ctx.objects();
    j["count"] = cl.concepts.size();
    ordered_json concepts = ordered_json::array();
    for (const LSubset& c : cl.concepts) {
      ordered_json vec = ordered_json::array();
      for (Elem e : c) vec.push_back(lat.element_name(e));
      concepts.push_back(std::move(vec));
    }
    j["concepts"] = std::move(concepts);
    ordered_json order = ordered_json::array();
    for (std::size_t i = 0; i < cl.concepts.size(); ++i) {
      ordered_json row = ordered_json::array();
      for (std::size_t k = 0; k < cl.concepts.size(); ++k)
        row.push_back(lat.element_name(cl.order_at(static_cast<int>(i), static_cast<int>(k))));
      order.push_back(std::move(row));
    }
    j["order"] = std::move(order);
    emit(opts, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "mode: " << to_string(mode) << "\n";
    out << "strategy: " << to_string(strategy) << "\n";
    out << "objects: " << labels_of(ctx.objects(), ctx.full_selector().objects) << "\n";
    out << "concepts: " << cl.concepts.size() << "\n";
    for (std::size_t i = 0; i < cl.concepts.size(); ++i) {
      out << "c" << i << ":";
      for (Elem e : cl.concepts[i]) out << " " << lat.element_name(e);
      out << "\n";
    }
    emit(opts, out.str());
  }
  return kExitOk;
}

// ---- reduct-check ----------------------------------------------------------

std::string side_display(const Context& ctx, const SideCheck& side, bool object_side) {
  std::ostringstream out;
  if (side.reducible) {
    out << "reducible";
  } else {
    out << "not reducible";
    if (side.witness) {
      // object-side witnesses live over attributes and vice versa
      const auto& labels = object_side ? ctx.attributes() : ctx.objects();
      out << " (witness over " << (object_side ? "attributes" : "objects") << ": "
          << subset_display(labels, *side.witness, ctx.lattice()) << ")";
    }
  }
  out << " [examined " << side.examined << "]";
  return out.str();
}

ordered_json side_json(const Context& ctx, const SideCheck& side, bool object_side) {
  ordered_json j;
  j["reducible"] = side.reducible;
  if (side.witness) {
    j["witness_carrier"] = object_side ? "attributes" : "objects";
    j["witness"] = subset_json(object_side ? ctx.attributes() : ctx.objects(), *side.witness,
                               ctx.lattice());
  }
  j["examined"] = side.examined;
  return j;
}

int cmd_reduct_check(const CommonOptions& opts) {
  Context ctx = load_context(opts);
  const Selector sel = resolve_selector(ctx, opts);
  const Mode mode = *mode_from_string(opts.mode_name);
  ReductReport report = is_reduct(ctx, sel, mode, *method_from_string(opts.method_name),
                                  opts.budget);

  if (opts.format == "json") {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "reduct-check";
    j["mode"] = to_string(mode);
    j["method"] = to_string(report.method);
    j["objects_kept"] = kept_json(ctx.objects(), sel.objects);
    j["attributes_kept"] = kept_json(ctx.attributes(), sel.attributes);
    j["verdict"] = report.is_reduct;
    j["object_side"] = side_json(ctx, report.object_side, true);
    j["attribute_side"] = side_json(ctx, report.attribute_side, false);
    emit(opts, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "mode: " << to_string(mode) << "\n";
    out << "method: " << to_string(report.method) << "\n";
    out << "kept objects: " << labels_of(ctx.objects(), sel.objects) << "\n";
    out << "kept attributes: " << labels_of(ctx.attributes(), sel.attributes) << "\n";
    out << "object side: " << side_display(ctx, report.object_side, true) << "\n";
    out << "attribute side: " << side_display(ctx, report.attribute_side, false) << "\n";
    out << "verdict: " << (report.is_reduct ? "reduct" : "not a reduct") << "\n";
    emit(opts, out.str());
  }
  return report.is_reduct ? kExitOk : kExitFalse;
}

// ---- reduct-search ---------------------------------------------------------

int cmd_reduct_search(const CommonOptions& opts, bool all) {
  Context ctx = load_context(opts);
  const Mode mode = *mode_from_string(opts.mode_name);
  SearchOptions options;
  options.minimal_only = !all;
  options.method = *method_from_string(opts.method_name);
  options.budget = opts.budget;
  std::vector<Selector> reducts = search_reducts(ctx, mode, options);

  if (opts.format == "json") {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "reduct-search";
    j["mode"] = to_string(mode);
    j["minimal_only"] = options.minimal_only;
    ordered_json list = ordered_json::array();
    for (const Selector& sel : reducts) {
      ordered_json one;
      one["objects"] = kept_json(ctx.objects(), sel.objects);
      one["attributes"] = kept_json(ctx.attributes(), sel.attributes);
      list.push_back(std::move(one));
    }
    j["reducts"] = std::move(list);
    emit(opts, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "mode: " << to_string(mode) << "\n";
    out << (options.minimal_only ? "minimal reducts: " : "reducts: ") << reducts.size() << "\n";
    for (const Selector& sel : reducts)
      out << "objects: " << labels_of(ctx.objects(), sel.objects)
          << " | attributes: " << labels_of(ctx.attributes(), sel.attributes) << "\n";
    emit(opts, out.str());
  }
  return kExitOk;
}

// ---- verify-theorem --------------------------------------------------------

int cmd_verify_theorem(const CommonOptions& opts, const InterdefConfig& config) {
  std::shared_ptr<const Lattice> lat = load_lattice_override(opts);
  if (!lat) throw ParseError(0, "verify-theorem needs --lattice or --builtin");
  InterdefReport report = verify_interdefinability(lat, config);

  if (opts.format == "json") {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "verify-theorem";
    j["lattice"] = lattice_json(*lat);
    j["double_negation"] = report.lattice_dne;
    if (config.exhaustive) {
      j["sweep"] = "exhaustive";
    } else {
      j["sweep"] = "random";
      j["samples"] = config.samples;
      j["seed"] = config.seed;
    }
    j["max_objects"] = config.max_objects;
    j["max_attributes"] = config.max_attributes;
    j["contexts_checked"] = report.contexts_checked;
    j["pairs_checked"] = report.pairs_checked;
    j["consistent"] = report.consistent();
    ordered_json violations = ordered_json::array();
    for (const InterdefCase& v : report.violations) {
      ordered_json one;
      one["context"] = context_json(v.context);
      one["objects_kept"] = kept_json(v.context.objects(), v.selector.objects);
      one["attributes_kept"] = kept_json(v.context.attributes(), v.selector.attributes);
      one["fca_verdict"] = v.fca_verdict;
      one["rst_verdict_on_negation"] = v.rst_verdict;
      violations.push_back(std::move(one));
    }
    j["violations"] = std::move(violations);
    if (report.witness) {
      ordered_json w;
      w["context"] = context_json(report.witness->context);
      w["objects_kept"] = kept_json(report.witness->context.objects(), report.witness->selector.objects);
      w["attributes_kept"] =
          kept_json(report.witness->context.attributes(), report.witness->selector.attributes);
      w["fca_verdict"] = report.witness->fca_verdict;
      w["rst_verdict_on_negation"] = report.witness->rst_verdict;
      j["witness"] = std::move(w);
    }
    emit(opts, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "lattice: " << lattice_display(*lat) << "\n";
    if (report.lattice_dne)
      out << "double negation: holds\n";
    else
      out << "double negation: fails (witness: " << lat->element_name(*lat->dne_witness())
          << ")\n";
    if (config.exhaustive)
      out << "sweep: exhaustive up to " << config.max_objects << "x" << config.max_attributes
          << "\n";
    else
      out << "sweep: random (samples=" << config.samples << ", seed=" << config.seed << ")\n";
    out << "contexts checked: " << report.contexts_checked << "\n";
    out << "pairs checked: " << report.pairs_checked << "\n";
    if (report.lattice_dne) {
      out << "equivalence violations: " << report.violations.size() << "\n";
    } else {
      out << "witness found: " << (report.witness ? "yes" : "no") << "\n";
      if (report.witness) {
        const Context& w = report.witness->context;
        for (int x = 0; x < w.object_count(); ++x) {
          out << "  " << w.objects()[static_cast<std::size_t>(x)] << ":";
          for (int y = 0; y < w.attribute_count(); ++y)
            out << " " << w.lattice().element_name(w.at(x, y));
          out << "\n";
        }
        out << "  kept objects: " << labels_of(w.objects(), report.witness->selector.objects)
            << "\n";
        out << "  kept attributes: "
            << labels_of(w.attributes(), report.witness->selector.attributes) << "\n";
        out << "  rst verdict on negation: reduct\n";
        out << "  fca verdict: not a reduct\n";
      }
    }
    out << "consistent: " << (report.consistent() ? "yes" : "no") << "\n";
    emit(opts, out.str());
  }
  return report.consistent() ? kExitOk : kExitFalse;
}

template <typename F>
int run_guarded(F&& f) {
  try {
    return f();
  } catch (const UnknownLabelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLabels;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const LatticeError& e) {
    std::cerr << "error: invalid lattice: " << e.what() << "\n";
    return kExitInvalidLattice;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concept lattices and reducts of lattice-valued contexts"};
  app.require_subcommand(1);

  CommonOptions opts;

  CLI::App* validate = app.add_subcommand("lattice-validate",
                                          "Check the residuated-lattice axioms and double negation");
  add_lattice_options(validate, opts);
  add_format_options(validate, opts);

  CLI::App* concepts = app.add_subcommand("concepts", "Enumerate the concept lattice of a context");
  add_context_options(concepts, opts);
  add_mode_method_options(concepts, opts);
  add_format_options(concepts, opts);

  CLI::App* check = app.add_subcommand("reduct-check", "Decide whether a subcontext is a reduct");
  add_context_options(check, opts);
  add_mode_method_options(check, opts);
  add_format_options(check, opts);
  CLI::Option* objects_opt =
      check->add_option("--objects", opts.objects_csv,
                        "Comma-separated kept object labels (default: all, empty string: none)");
  CLI::Option* attributes_opt = check->add_option(
      "--attributes", opts.attributes_csv,
      "Comma-separated kept attribute labels (default: all, empty string: none)");

  CLI::App* search = app.add_subcommand("reduct-search", "List reducts of a context");
  bool search_all = false;
  add_context_options(search, opts);
  add_mode_method_options(search, opts);
  add_format_options(search, opts);
  search->add_flag("--all", search_all, "List every reduct, not only the minimal ones");

  CLI::App* verify = app.add_subcommand(
      "verify-theorem", "Probe the fca/rst reduct correspondence under negation");
  add_lattice_options(verify, opts);
  add_format_options(verify, opts);
  InterdefConfig config;
  verify->add_option("--samples", config.samples, "Number of random contexts")
      ->capture_default_str();
  CLI::Option* seed_opt = verify->add_option("--seed", config.seed, "Sampler seed (required unless --exhaustive)");
  verify->add_flag("--exhaustive", config.exhaustive,
                   "Sweep every context up to the size bounds instead of sampling");
  verify->add_option("--max-objects", config.max_objects, "Largest object count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--max-attributes", config.max_attributes, "Largest attribute count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--budget", config.budget, "Candidate budget per decision")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--method", opts.method_name, "Decision method")
      ->check(CLI::IsMember({"exhaustive", "generators", "auto"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
    if (verify->parsed() && !config.exhaustive && seed_opt->count() == 0)
      throw CLI::RequiredError("--seed (random sweeps must be reproducible)");
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  opts.objects_given = objects_opt->count() > 0;
  opts.attributes_given = attributes_opt->count() > 0;
  config.method = *method_from_string(opts.method_name);

  if (validate->parsed()) return run_guarded([&] { return cmd_lattice_validate(opts); });
  if (concepts->parsed()) return run_guarded([&] { return cmd_concepts(opts); });
  if (check->parsed()) return run_guarded([&] { return cmd_reduct_check(opts); });
  if (search->parsed()) return run_guarded([&] { return cmd_reduct_search(opts, search_all); });
  if (verify->parsed()) return run_guarded([&] { return cmd_verify_theorem(opts, config); });
  return kExitOk;
}
