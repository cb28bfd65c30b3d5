#include <cmath>

#include <fmt/format.h>

#include "castml/cas/command.hpp"
#include "castml/cas/factor.hpp"
#include "castml/cas/numeric.hpp"
#include "castml/cas/plot.hpp"
#include "castml/cas/poly.hpp"
#include "castml/cas/protocol.hpp"
#include "castml/cas/simplify.hpp"
#include "castml/cas/tex.hpp"

namespace castml::cas {

namespace {

struct Outcome {
  PayloadKind kind;
  std::string payload;
  std::vector<std::string> diagnostics;
};

std::string default_variable(const Expr& e) {
  const auto symbols = free_symbols(e);
  if (symbols.size() == 1) return *symbols.begin();
  if (symbols.count("x") || symbols.empty()) return "x";
  throw CasError(CasErrorCode::InvalidArgument,
                 fmt::format("cannot choose a variable among {} symbols; name it explicitly", symbols.size()));
}

Outcome render(const Expr& e, EvalMode mode) {
  if (mode == EvalMode::Math) return {PayloadKind::Tex, expr_to_tex(e), {}};
  return {PayloadKind::Text, to_text(e), {}};
}

Outcome run_factor(const Expr& arg, EvalMode mode) {
  const Expr e = simplify(arg);
  auto symbols = free_symbols(e);
  if (symbols.size() > 1) {
    throw CasError(CasErrorCode::InvalidArgument, "factor supports univariate polynomials only");
  }
  const std::string var = symbols.empty() ? "x" : *symbols.begin();
  const auto poly = to_poly(e, var);
  if (!poly) throw CasError(CasErrorCode::InvalidArgument, "factor expects a polynomial with rational coefficients");
  const Factorization f = factor_poly(*poly);
  Outcome out{mode == EvalMode::Math ? PayloadKind::Tex : PayloadKind::Text,
              mode == EvalMode::Math ? factors_to_tex(f) : factors_to_text(f), f.diagnostics};
  return out;
}

double numeric_bound(const Expr& e, const char* which) {
  const double v = eval_numeric(simplify(e));
  if (!std::isfinite(v)) throw CasError(CasErrorCode::InvalidArgument, fmt::format("plot {} is not finite", which));
  return v;
}

Outcome run(const Command& cmd, EvalMode mode) {
  switch (cmd.verb) {
    case Verb::Evaluate:
      return render(simplify(cmd.args[0]), mode);
    case Verb::Expand:
      return render(expand(simplify(cmd.args[0])), mode);
    case Verb::Factor:
      return run_factor(cmd.args[0], mode);
    case Verb::Diff: {
      const Expr e = simplify(cmd.args[0]);
      const std::string var = cmd.args.size() > 1 ? cmd.args[1].name() : default_variable(e);
      return render(diff(e, var), mode);
    }
    case Verb::Plot: {
      double lo = kDefaultPlotMin;
      double hi = kDefaultPlotMax;
      if (cmd.args.size() == 3) {
        lo = numeric_bound(cmd.args[1], "xmin");
        hi = numeric_bound(cmd.args[2], "xmax");
      }
      PlotResult plot = plot_svg(simplify(cmd.args[0]), lo, hi);
      return {PayloadKind::Svg, std::move(plot.svg), std::move(plot.diagnostics)};
    }
  }
  throw CasError(CasErrorCode::InvalidArgument, "unsupported command");
}

EvalResponse failure(const std::string& id, std::string message) {
  EvalResponse r;
  r.id = id;
  r.status = EvalStatus::Error;
  r.kind = PayloadKind::Text;
  r.payload = message;
  r.diagnostics.push_back(std::move(message));
  return r;
}

}  // namespace

EvalResponse evaluate(const EvalRequest& request) noexcept {
  try {
    try {
      const Command cmd = parse_command(request.command);
      Outcome out = run(cmd, request.mode);
      EvalResponse r;
      r.id = request.id;
      r.status = EvalStatus::Ok;
      r.kind = out.kind;
      r.payload = std::move(out.payload);
      r.diagnostics = std::move(out.diagnostics);
      return r;
    } catch (const CasError& e) {
      std::string msg = fmt::format("{}: {}", to_string(e.code()), e.what());
      if (e.position() > 0) msg += fmt::format(" (column {})", e.position());
      return failure(request.id, std::move(msg));
    } catch (const std::bad_alloc&) {
      return failure(request.id, "ExprTooLarge: out of memory");
    } catch (const std::exception& e) {
      return failure(request.id, std::string("internal error: ") + e.what());
    }
  } catch (...) {
    EvalResponse r;
    r.status = EvalStatus::Error;
    return r;
  }
}

}  // namespace castml::cas
