// Command-line front end: verification registry and ad-hoc queries.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "unil/complexes.hpp"
#include "unil/rim.hpp"
#include "unil/text.hpp"
#include "unil/verify.hpp"
#include "unil/witt.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kDomain = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  out << text;
}

template <class R>
std::string format_formation(const unil::SplitFormation<R>& f) {
  return "gamma=" + unil::format(f.gamma) + "\nmu=" + unil::format(f.mu) +
         "\ntheta=" + unil::format(f.theta) + "\nepsilon=" + std::to_string(f.epsilon) + "\n";
}

// Four labeled blocks gamma=, mu=, theta=, epsilon=; a block runs to the next label.
unil::FormationC2 parse_formation(const std::string& text) {
  const std::vector<std::string> labels{"gamma=", "mu=", "theta=", "epsilon="};
  std::vector<std::size_t> at;
  for (const auto& l : labels) {
    const std::size_t pos = text.find(l);
    if (pos == std::string::npos) throw unil::ParseError("formation file: missing '" + l + "'");
    at.push_back(pos);
  }
  auto block = [&](std::size_t i) {
    const std::size_t begin = at[i] + labels[i].size();
    std::size_t end = text.size();
    for (std::size_t pos : at)
      if (pos > at[i]) end = std::min(end, pos);
    return text.substr(begin, end - begin);
  };
  unil::FormationC2 f{unil::parse_matrix<unil::C2PolyElt>(block(0)),
                      unil::parse_matrix<unil::C2PolyElt>(block(1)),
                      unil::parse_matrix<unil::C2PolyElt>(block(2)), -1};
  std::string eps = block(3);
  eps.erase(std::remove_if(eps.begin(), eps.end(), [](unsigned char ch) { return std::isspace(ch); }),
            eps.end());
  if (eps != "1" && eps != "-1" && eps != "+1")
    throw unil::ParseError("formation file: epsilon must be 1 or -1");
  f.epsilon = eps == "-1" ? -1 : 1;
  return f;
}

std::vector<long> parse_coeff_set(const std::string& text) {
  std::vector<long> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--coeff-set: bad entry '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("--coeff-set is empty");
  return out;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with split formations over Z[C2][x] and their UNil classes"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  unsigned max_deg = 3, threads = 1;
  std::string coeff_text = "0,1,2", dump_dir;
  app.add_option("--max-deg", max_deg, "Sweep: maximal degree of sampled polynomials");
  app.add_option("--coeff-set", coeff_text, "Sweep: comma-separated coefficient values");
  app.add_option("--threads", threads, "Worker threads for verify")->check(CLI::PositiveNumber);
  app.add_option("--dump", dump_dir, "Directory for intermediate output");

  auto* verify = app.add_subcommand("verify", "Run the check registry");
  std::string filter = "*", summary_path = "unil_verify_summary.txt", report_path;
  bool list = false, fail_fast = false;
  verify->add_option("--filter", filter, "Glob over check ids");
  verify->add_option("--summary", summary_path, "Key-value summary file");
  verify->add_option("--report", report_path, "Also write the report to this file");
  verify->add_flag("--list", list, "List check ids and exit");
  verify->add_flag("--fail-fast", fail_fast, "Stop at the first failing check");

  auto* arf_cmd = app.add_subcommand("arf", "Arf class of a quadratic form over F2[x]");
  std::string form_file;
  arf_cmd->add_option("--file", form_file, "File holding the psi matrix")->required();

  auto* boundary_cmd = app.add_subcommand("boundary", "Boundary formation of P_{q,1}");
  std::string q_text;
  bool show_steps = false;
  boundary_cmd->add_option("--q", q_text, "q in xZ[x]")->required();
  boundary_cmd->add_flag("--show-steps", show_steps, "Print the intermediate formations");

  auto* formation_cmd = app.add_subcommand("formation", "Build or check split formations");
  formation_cmd->require_subcommand(1);
  auto* make_m_cmd = formation_cmd->add_subcommand("make-M", "Print M_{p,g}");
  std::string p_text, g_text, p2_text;
  make_m_cmd->add_option("--p", p_text)->required();
  make_m_cmd->add_option("--g", g_text)->required();
  auto* make_q_cmd = formation_cmd->add_subcommand("make-Q", "Print Q_q");
  make_q_cmd->add_option("--q", q_text)->required();
  auto* check_cmd = formation_cmd->add_subcommand("check", "Hessian, duality and graph verdicts");
  std::string formation_file;
  check_cmd->add_option("file", formation_file)->required();

  auto* machine_cmd = app.add_subcommand("machine", "Run a relation through the surgery machine");
  int relation = 0;
  machine_cmd->add_option("--relation", relation)->required()->check(CLI::Range(1, 4));
  machine_cmd->add_option("--p", p_text)->required();
  machine_cmd->add_option("--p2", p2_text, "Second index for relation 1");
  machine_cmd->add_option("--g", g_text)->required();

  auto* replay_cmd = app.add_subcommand("replay", "Replay a derivation script");
  std::string script_file;
  replay_cmd->add_option("script", script_file)->required();

  auto* unil_cmd = app.add_subcommand("unil", "UNil_n of Z[C2] or of a group with the same answer");
  long n = 0;
  std::string group = "C2";
  int sylow_exponent = 2;
  bool non_normal = false;
  unil_cmd->add_option("--n", n)->required();
  unil_cmd->add_option("--group", group)->check(CLI::IsMember({"C2", "general"}));
  unil_cmd->add_option("--sylow-exponent", sylow_exponent, "General groups: Sylow 2 exponent");
  unil_cmd->add_flag("--non-normal-sylow", non_normal, "General groups: Sylow 2 not normal");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (verify->parsed()) {
      if (list) {
        for (const auto& c : unil::check_registry()) std::cout << c.id << "  " << c.anchor << "\n";
        return kOk;
      }
      unil::CheckContext ctx;
      ctx.sweep = {max_deg, parse_coeff_set(coeff_text), threads};
      const auto report = unil::run_verification(ctx, {filter, fail_fast});
      if (report.results.empty()) throw UsageError("--filter '" + filter + "' matches no check");
      const std::string text = unil::format_report(report);
      std::cout << text;
      fs::path summary = summary_path, rep = report_path;
      if (!dump_dir.empty()) {
        summary = fs::path(dump_dir) / summary.filename();
        if (rep.empty()) rep = fs::path(dump_dir) / "unil_verify_report.txt";
      }
      write_file(summary, unil::format_summary(report));
      if (!rep.empty()) write_file(rep, text);
      return report.all_pass() ? kOk : kFail;
    }

    if (arf_cmd->parsed()) {
      const unil::FormF2 form{unil::parse_matrix<unil::PolyF2>(read_file(form_file)), 1};
      const unil::ArfClass a = unil::arf(form);
      std::cout << unil::format(a) << "\nreduced: " << yes_no(a.reduced()) << "\n";
      return kOk;
    }

    if (boundary_cmd->parsed()) {
      const unil::PolyInt q = unil::parse_poly<unil::PolyInt>(q_text);
      const unil::BoundarySteps s = unil::boundary_steps(unil::p_q1_input(q));
      if (show_steps) {
        std::cout << "# lifted boundary formation over Z[x] (minus side)\n"
                  << format_formation(s.raw.minus)
                  << "# hyperbolic formation over Z[x] (plus side)\n"
                  << format_formation(s.raw.plus)
                  << "# after the change of basis by a lift of phi'^-1 (minus side)\n"
                  << format_formation(s.rebased.minus) << "# pulled back to Z[C2][x]\n";
      }
      std::cout << format_formation(s.assembled);
      const bool matches = s.assembled == unil::make_Q(q);
      std::cout << "equals Q_q: " << yes_no(matches) << "\n";
      if (!dump_dir.empty()) {
        const fs::path d(dump_dir);
        write_file(d / "raw_minus.txt", format_formation(s.raw.minus));
        write_file(d / "raw_plus.txt", format_formation(s.raw.plus));
        write_file(d / "rebased_minus.txt", format_formation(s.rebased.minus));
        write_file(d / "assembled.txt", format_formation(s.assembled));
      }
      return matches ? kOk : kFail;
    }

    if (formation_cmd->parsed()) {
      if (make_m_cmd->parsed()) {
        std::cout << format_formation(unil::make_M(unil::parse_poly<unil::PolyInt>(p_text),
                                                   unil::parse_poly<unil::PolyInt>(g_text)));
        return kOk;
      }
      if (make_q_cmd->parsed()) {
        std::cout << format_formation(unil::make_Q(unil::parse_poly<unil::PolyInt>(q_text)));
        return kOk;
      }
      const unil::FormationC2 f = parse_formation(read_file(formation_file));
      const bool hessian = unil::hessian_holds(f);
      std::cout << "hessian: " << yes_no(hessian) << "\n";
      std::cout << "poincare: " << yes_no(unil::verify_poincare(f)) << "\n";
      std::cout << "graph: " << yes_no(unil::is_graph(f)) << "\n";
      std::cout << "complementary: " << yes_no(unil::is_complementary(f)) << "\n";
      return hessian ? kOk : kFail;
    }

    if (machine_cmd->parsed()) {
      const auto p = unil::parse_poly<unil::PolyInt>(p_text);
      const auto g = unil::parse_poly<unil::PolyInt>(g_text);
      unil::RelationInstance inst;
      if (relation == 1) {
        if (p2_text.empty()) throw UsageError("--relation 1 needs --p2");
        const auto p2 = unil::parse_poly<unil::PolyInt>(p2_text);
        if (!unil::additivity_admissible(p, p2, g))
          throw unil::PreconditionError("relation 1 needs p1 g, p2 g in xZ[x]");
        inst = unil::additivity_instance(p, p2, g);
      } else {
        if (!p2_text.empty()) throw UsageError("--p2 applies to relation 1 only");
        if (!unil::relation_admissible(relation, p, g))
          throw unil::PreconditionError("parameters violate the generator preconditions of relation " +
                                        std::to_string(relation));
        inst = unil::relation_instance(relation, p, g);
      }
      const auto report = unil::run_machine(inst.formation, inst.data, !dump_dir.empty());
      std::cout << "instance: " << inst.label << "\n";
      for (const auto& [stage, verdict] : report.stages) std::cout << stage << ": " << verdict << "\n";
      std::cout << "arf: " << unil::format(report.arf) << "\n";
      if (!dump_dir.empty())
        for (const auto& [name, text] : report.matrices)
          write_file(fs::path(dump_dir) / (name + ".txt"), text + "\n");
      return report.arf == inst.expected ? kOk : kFail;
    }

    if (replay_cmd->parsed()) {
      const unil::Derivation d = unil::parse_derivation(read_file(script_file));
      const unil::ReplayResult r = unil::replay(d);
      if (r.closed) {
        std::cout << "closed after " << d.script.steps.size() << " steps\n";
        return kOk;
      }
      if (r.failed_step)
        std::cout << "failed at step " << *r.failed_step + 1 << " ("
                  << unil::format(d.script.steps[*r.failed_step]) << "): " << r.reason << "\n";
      else
        std::cout << "not closed: " << r.reason << "\n";
      std::cout << "reached: " << unil::format(r.final_word) << "\n";
      return kFail;
    }

    if (unil_cmd->parsed()) {
      unil::GroupContext ctx;
      if (group == "general")
        ctx = {unil::GroupContext::Kind::General, !non_normal, sylow_exponent};
      std::cout << unil::format(unil::unil_answer(n, ctx));
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const unil::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const unil::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kUsage;
}
