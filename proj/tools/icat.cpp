// Command-line front end: reads a JSON document (file or stdin), dispatches
// one command against it, prints a deterministic JSON report on stdout.
// Exit codes: 0 = ok, 1 = parse/validation failure, 2 = property failure.

#include <CLI11.hpp>
#include <icat/cli.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw icat::ParseError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"internal-groupoid factorization systems and type formers"};
  app.require_subcommand(1);
  std::string input = "-";
  app.add_option("-i,--input", input, "document path, or - for stdin");

  icat::cli::Command cmd;
  std::string system, from, to;

  auto add = [&](const std::string& name, const std::string& desc, int min_args,
                 int max_args) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("items", cmd.args, "named document items")
        ->expected(min_args, max_args);
    sub->callback([&cmd, name] { cmd.name = name; });
    return sub;
  };

  add("validate", "validate every named item in the document", 0, 0);
  add("classify", "classify a functor against the model structure", 1, 1);
  CLI::App* fac = add("factorize", "factor a functor through one of the two systems", 1, 1);
  fac->add_option("--system", system, "ctf (cofibration first) or tcf (trivial cofibration first)")
      ->required();
  CLI::App* tr = add("translate", "translate between algebra and presentation forms", 1, 1);
  tr->add_option("--from", from, "source form")->required();
  tr->add_option("--to", to, "target form")->required();
  add("lift", "canonical diagonal filler: trivcof cleavage top bottom", 4, 4);
  add("frobenius", "pull a trivial cofibration back along a cleavage", 2, 2);
  add("sigma", "compose two cleavages: outer inner", 2, 2);
  add("pi", "dependent product along a cleavage: base family", 2, 2);
  add("path-object", "factor the diagonal of a cleavage", 1, 1);
  add("id-type", "identity type of a cleavage", 1, 1);
  add("verify-ttawfs", "run the axiom report over all document structures", 0, 0);

  CLI11_PARSE(app, argc, argv);
  if (!system.empty()) cmd.options["system"] = system;
  if (!from.empty()) cmd.options["from"] = from;
  if (!to.empty()) cmd.options["to"] = to;

  try {
    icat::cli::Document doc = icat::cli::parse_document(read_input(input));
    icat::cli::Report rep = icat::cli::execute(cmd, doc);
    std::cout << icat::cli::emit(rep);
    return rep.exit_code;
  } catch (const icat::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const icat::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const icat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
