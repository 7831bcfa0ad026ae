#include "parcon/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>

#include "parcon/calculus.hpp"
#include "parcon/conjugacy.hpp"
#include "parcon/errors.hpp"
#include "parcon/expr.hpp"
#include "parcon/format.hpp"
#include "parcon/group.hpp"

namespace parcon::cli {

namespace {

struct Options {
  std::string field = "k";
  std::size_t depth = 0;
  std::string extend = "on";
  std::string cutoff = "-40";
  std::size_t max_iter = 10000;
  std::string format = "text";
  std::string in;
  std::vector<std::string> inputs;
};

struct Command {
  const char* name;
  const char* help;
  std::size_t arity;
};

const Command kCommands[] = {
    {"eval", "evaluate a series expression", 1},
    {"derive", "derivative f'", 1},
    {"logderive", "logarithmic derivative f'/f", 1},
    {"bracket", "Lie bracket [[f,g]] = f g' - f' g", 2},
    {"exp", "exp(f d/dx)(x) for contracting f", 1},
    {"log-map", "inverse of exp on a parabolic series x + δ", 1},
    {"compose", "g ∘ p for a parabolic p", 2},
    {"invert", "compositional inverse of a parabolic series", 1},
    {"star", "group law f ∗ g", 2},
    {"asymint", "asymptotic integral of f (a single term)", 1},
    {"conj-check", "decision criterion for x+δ (first) and x+ε (second)", 2},
    {"conj-find", "construct a conjugator between x+δ (first) and x+ε (second)", 2},
    {"verify", "check a witness φ for x+δ, x+ε, φ", 3},
};

ContextPtr make_context(const Options& o) {
  if (o.field == "k") return make_rational_context(parse_cutoff(o.cutoff, ExponentKind::Rational).value(), o.max_iter);
  return make_loglex_context(o.depth, o.extend == "on", parse_cutoff(o.cutoff, ExponentKind::LogLex), o.max_iter);
}

Series read_series(const std::string& text, const ContextPtr& ctx) {
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("bad JSON: ") + e.what(), e.byte, {"JSON value"});
    }
    return series_from_json(j, ctx);
  }
  return parse_series(text, ctx);
}

void read_file(const std::string& path, std::vector<std::string>& inputs) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--in", "cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    inputs.push_back(line);
  }
}

class Printer {
 public:
  Printer(std::ostream& out, bool json) : out_(out), json_(json) {}

  void series(const Series& s) {
    if (json_)
      out_ << to_json(s).dump(2) << "\n";
    else
      out_ << to_text(s) << "\n";
  }

  void record(const Json& j, const std::string& text) {
    if (json_)
      out_ << j.dump(2) << "\n";
    else
      out_ << text;
  }

  bool json() const { return json_; }

 private:
  std::ostream& out_;
  bool json_;
};

ParabolicSeries parabolic(const Series& s) { return ParabolicSeries(s); }

int dispatch(const std::string& cmd, const std::vector<Series>& in, Printer& p, std::ostream& err) {
  const auto& ctx = in.front().context();
  if (cmd == "eval") return p.series(in[0]), kOk;
  if (cmd == "derive") return p.series(derive(in[0])), kOk;
  if (cmd == "logderive") return p.series(log_derivative(in[0])), kOk;
  if (cmd == "bracket") return p.series(lie_bracket(in[0], in[1])), kOk;
  if (cmd == "exp") return p.series(exp_map(GroupElement(in[0])).series()), kOk;
  if (cmd == "log-map") return p.series(log_map(parabolic(in[0])).series()), kOk;
  if (cmd == "compose") return p.series(compose(in[0], parabolic(in[1]))), kOk;
  if (cmd == "invert") return p.series(invert_parabolic(parabolic(in[0])).series()), kOk;
  if (cmd == "star") return p.series(star(GroupElement(in[0]), GroupElement(in[1])).series()), kOk;
  if (cmd == "asymint") {
    try {
      const auto r = asymptotic_integral(in[0]);
      if (r.extended && !p.json()) err << "note: log depth extended to " << r.depth << "\n";
      p.record(Json{{"term", to_json(r.term)}, {"depth", r.depth}, {"extended", r.extended}}, to_text(r.term) + "\n");
      return kOk;
    } catch (const PseudoGapError& e) {
      err << "pseudo-gap: no asymptotic integral, obstruction at " << to_string(e.obstruction()) << "\n";
      if (p.json()) p.record(to_json(e), "");
      return kNegative;
    }
  }
  if (cmd == "conj-check") {
    const Series delta = parabolic(in[0]).delta();
    const Series epsilon = parabolic(in[1]).delta();
    if (ctx->kind == FieldKind::LogLex) {
      const bool yes = decide_transseries(delta, epsilon);
      const char* v = yes ? "Conjugate" : "NotConjugate";
      p.record(Json{{"field", "tlog"}, {"verdict", v}}, std::string(v) + "\n");
      return yes ? kOk : kNegative;
    }
    const PoweredVerdict v = decide_powered(delta, epsilon);
    p.record(Json{{"field", "k"}, {"verdict", to_string(v)}}, std::string(to_string(v)) + "\n");
    return v == PoweredVerdict::NoByObstruction ? kNegative : kOk;
  }
  if (cmd == "conj-find") {
    const GroupElement g = log_map(parabolic(in[0]));
    const GroupElement f = log_map(parabolic(in[1]));
    const ConjugacyOutcome o = construct_conjugator(f, g);
    p.record(to_json(o), to_text(o));
    return o.verdict == Verdict::NotConjugate ? kNegative : kOk;
  }
  if (cmd == "verify") {
    const GroupElement g = log_map(parabolic(in[0]));
    const GroupElement f = log_map(parabolic(in[1]));
    const bool ok = verify_witness(f, g, GroupElement(in[2]));
    p.record(Json{{"verified", ok}}, ok ? "verified\n" : "not verified\n");
    return ok ? kOk : kNegative;
  }
  throw std::logic_error("unknown command " + cmd);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact conjugacy of parabolic formal series", "parcon"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--field", o.field, "k: rational exponents, tlog: logarithmic transseries")
      ->check(CLI::IsMember({"k", "tlog"}))
      ->capture_default_str();
  app.add_option("--depth", o.depth, "minimum log depth (tlog)")->capture_default_str();
  app.add_option("--extend-depth", o.extend, "allow integration one log level deeper (tlog)")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  app.add_option("--cutoff", o.cutoff, "working cutoff: -40, (1,-30) or a monomial like x*log(x)^(-30)")
      ->capture_default_str();
  app.add_option("--max-iter", o.max_iter, "bound on every iteration")->capture_default_str();
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--in", o.in, "read inputs (one per line, expressions or series JSON) from a file");

  std::map<std::string, const Command*> by_name;
  for (const auto& c : kCommands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("inputs", o.inputs, "series expressions");
    by_name[c.name] = &c;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  const Command* cmd = by_name.at(app.get_subcommands().front()->get_name());
  Printer printer(out, o.format == "json");
  auto report = [&](const char* kind, const std::string& msg, int code) {
    err << kind << ": " << msg << "\n";
    if (printer.json()) out << Json{{"error", kind}, {"message", msg}}.dump(2) << "\n";
    return code;
  };

  try {
    if (!o.in.empty()) read_file(o.in, o.inputs);
    if (o.inputs.size() != cmd->arity)
      return report("usage error",
                    std::string(cmd->name) + " takes " + std::to_string(cmd->arity) + " input(s), got " +
                        std::to_string(o.inputs.size()),
                    kUsage);
    const ContextPtr ctx = make_context(o);
    std::vector<Series> series;
    for (const auto& s : o.inputs) series.push_back(read_series(s, ctx));
    return dispatch(cmd->name, series, printer, err);
  } catch (const ParseError& e) {
    std::string expected;
    for (const auto& x : e.expected()) expected += (expected.empty() ? "" : ", ") + x;
    return report("parse error", std::string(e.what()) + (expected.empty() ? "" : "; expected one of: " + expected),
                  kUsage);
  } catch (const CLI::Error& e) {
    return report("usage error", e.what(), kUsage);
  } catch (const std::invalid_argument& e) {
    return report("usage error", e.what(), kUsage);
  } catch (const Error& e) {
    return report("error", e.what(), kNegative);
  }
}

}  // namespace parcon::cli
