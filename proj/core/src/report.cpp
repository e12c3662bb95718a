#include "symbolbench/bench/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

#include "symbolbench/dynamics/boolean_sim.hpp"
#include "symbolbench/loop/refine.hpp"
#include "symbolbench/metrics/graph_metrics.hpp"
#include "symbolbench/metrics/scores.hpp"

namespace symbolbench::bench {

using metrics::TaskKind;
using nlohmann::json;

namespace {

double clipped_primary(const std::optional<metrics::ScoreCard>& card) {
  if (!card || card->failed) return -1.0;  // counts as <= 0 in the aggregates
  return card->primary;
}

const Sample* find_sample(const std::vector<Sample>& samples, const std::string& id) {
  for (const auto& s : samples) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

metrics::BnScores bn_scores_for(const expr::BooleanNetwork& net,
                                const std::vector<dynamics::BoolOrbit>& orbits) {
  std::vector<std::vector<std::uint8_t>> truth_rows, pred_rows;
  for (const auto& orbit : orbits) {
    const int steps = static_cast<int>(orbit.size()) - 1;
    auto sim = dynamics::simulate_boolean(net, {orbit.front()}, steps);
    for (int t = 1; t <= steps; ++t) {
      truth_rows.push_back(orbit[static_cast<size_t>(t)]);
      pred_rows.push_back(sim.front()[static_cast<size_t>(t)]);
    }
  }
  return metrics::bn_transition_scores(truth_rows, pred_rows);
}

void build_cde(const std::vector<RunResult>& results, const std::vector<Sample>& samples,
               Report& report) {
  std::map<int, std::vector<const RunResult*>> by_dim;
  for (const auto& r : results) {
    if (r.task == TaskKind::Cde) by_dim[r.dim].push_back(&r);
  }
  for (const auto& [dim, rows] : by_dim) {
    CdeDimRow row;
    row.dim = dim;
    row.n = static_cast<int>(rows.size());

    std::vector<double> id_scores, ood_scores;
    std::vector<std::pair<double, double>> corr_records;
    double complexity_total = 0.0;
    double proximity_total = 0.0;
    int proximity_n = 0;
    for (const RunResult* r : rows) {
      id_scores.push_back(
          r->best ? clipped_primary(r->best->scores.failed
                                        ? std::nullopt
                                        : std::optional(r->best->scores))
                  : -1.0);
      if (r->ood_scores) {
        const double ood = clipped_primary(r->ood_scores);
        ood_scores.push_back(ood);
        if (r->best) {
          corr_records.push_back({static_cast<double>(r->best->scores.complexity),
                                  ood > 0.9 ? 1.0 : 0.0});
        }
      }
      if (r->best) {
        complexity_total += r->best->scores.complexity;
        if (r->best->scores.symbolic_proximity) {
          proximity_total += *r->best->scores.symbolic_proximity;
          ++proximity_n;
        }
      }
    }

    auto id_agg = metrics::sr2_and_acc(id_scores, 0.9);
    row.sr2_id = 100.0 * id_agg.sr2;
    row.acc09_id = 100.0 * id_agg.acc;
    if (!ood_scores.empty()) {
      auto ood_agg = metrics::sr2_and_acc(ood_scores, 0.9);
      row.sr2_ood = 100.0 * ood_agg.sr2;
      row.acc09_ood = 100.0 * ood_agg.acc;
      row.n_ood = static_cast<int>(ood_scores.size());
    }
    row.mean_complexity = rows.empty() ? 0.0 : complexity_total / rows.size();
    if (proximity_n > 0) row.mean_proximity = proximity_total / proximity_n;
    row.complexity_ood_correlation = metrics::complexity_accuracy_correlation(corr_records);
    report.cde.push_back(row);
  }
}

void build_bn(const std::vector<RunResult>& results, const std::vector<Sample>& samples,
              Report& report) {
  std::vector<const RunResult*> rows;
  for (const auto& r : results) {
    if (r.task == TaskKind::Bn) rows.push_back(&r);
  }
  if (rows.empty()) return;

  BnAggregate agg;
  agg.n = static_cast<int>(rows.size());
  double complexity_total = 0.0, proximity_total = 0.0;
  int proximity_n = 0;
  std::vector<std::pair<double, double>> corr_records;

  for (const RunResult* r : rows) {
    const Sample* sample = find_sample(samples, r->sample_id);
    const auto* net = r->best && !r->best->scores.failed
                          ? std::get_if<expr::BooleanNetwork>(&r->best->structure)
                          : nullptr;
    if (net && sample) {
      auto id = bn_scores_for(*net, sample->train_orbits);
      agg.precision_id += id.precision;
      agg.recall_id += id.recall;
      agg.accuracy_id += id.accuracy;
      agg.bookmaker_id += id.bookmaker;
      agg.acc50_id += id.macro_f1 > 0.5 ? 1.0 : 0.0;
      agg.acc70_id += id.macro_f1 > 0.7 ? 1.0 : 0.0;
      agg.acc80_id += id.macro_f1 > 0.8 ? 1.0 : 0.0;
      if (!sample->ood_orbits.empty()) {
        auto ood = bn_scores_for(*net, sample->ood_orbits);
        ++agg.n_ood;
        agg.precision_ood += ood.precision;
        agg.recall_ood += ood.recall;
        agg.accuracy_ood += ood.accuracy;
        agg.bookmaker_ood += ood.bookmaker;
        agg.acc50_ood += ood.macro_f1 > 0.5 ? 1.0 : 0.0;
        agg.acc70_ood += ood.macro_f1 > 0.7 ? 1.0 : 0.0;
        agg.acc80_ood += ood.macro_f1 > 0.8 ? 1.0 : 0.0;
        corr_records.push_back({static_cast<double>(r->best->scores.complexity),
                                ood.macro_f1 > 0.5 ? 1.0 : 0.0});
      }
    }
    if (r->best) {
      complexity_total += r->best->scores.complexity;
      if (r->best->scores.symbolic_proximity) {
        proximity_total += *r->best->scores.symbolic_proximity;
        ++proximity_n;
      }
    }
  }

  const double n = agg.n;
  for (double* field : {&agg.precision_id, &agg.recall_id, &agg.accuracy_id,
                        &agg.bookmaker_id, &agg.acc50_id, &agg.acc70_id, &agg.acc80_id}) {
    *field = 100.0 * *field / n;
  }
  if (agg.n_ood > 0) {
    const double m = agg.n_ood;
    for (double* field : {&agg.precision_ood, &agg.recall_ood, &agg.accuracy_ood,
                          &agg.bookmaker_ood, &agg.acc50_ood, &agg.acc70_ood,
                          &agg.acc80_ood}) {
      *field = 100.0 * *field / m;
    }
  }
  agg.mean_complexity = complexity_total / n;
  if (proximity_n > 0) agg.mean_proximity = proximity_total / proximity_n;
  agg.complexity_ood_correlation = metrics::complexity_accuracy_correlation(corr_records);
  report.bn = agg;
}

void build_scm(const std::vector<RunResult>& results, const std::vector<Sample>& samples,
               Report& report) {
  std::vector<const RunResult*> rows;
  for (const auto& r : results) {
    if (r.task == TaskKind::Scm) rows.push_back(&r);
  }
  if (rows.empty()) return;

  ScmAggregate agg;
  agg.n = static_cast<int>(rows.size());
  for (const RunResult* r : rows) {
    const Sample* sample = find_sample(samples, r->sample_id);
    const auto* graph = r->best && !r->best->scores.failed
                            ? std::get_if<expr::ScmGraph>(&r->best->structure)
                            : nullptr;
    if (r->best && !r->best->scores.failed) agg.mean_ci_id += r->best->scores.primary;
    if (r->ood_scores && !r->ood_scores->failed) {
      agg.mean_ci_ood += r->ood_scores->primary;
      ++agg.n_ood;
    }
    if (graph) agg.mean_complexity += static_cast<double>(graph->edges.size());
    if (graph && sample && sample->ground_truth) {
      if (const auto* truth = std::get_if<expr::ScmGraph>(&*sample->ground_truth)) {
        auto em = metrics::scm_edge_metrics(*graph, *truth);
        ++agg.n_truth;
        agg.f1 += em.f1;
        agg.precision += em.precision;
        agg.recall += em.recall;
        agg.fdr += em.fdr;
        agg.mean_shd += em.shd;
        agg.acc50 += em.f1 > 0.5 ? 1.0 : 0.0;
        agg.acc70 += em.f1 > 0.7 ? 1.0 : 0.0;
        agg.acc80 += em.f1 > 0.8 ? 1.0 : 0.0;
      }
    }
  }
  if (agg.n_truth > 0) {
    const double m = agg.n_truth;
    agg.f1 = 100.0 * agg.f1 / m;
    agg.precision = 100.0 * agg.precision / m;
    agg.recall = 100.0 * agg.recall / m;
    agg.fdr = 100.0 * agg.fdr / m;
    agg.acc50 = 100.0 * agg.acc50 / m;
    agg.acc70 = 100.0 * agg.acc70 / m;
    agg.acc80 = 100.0 * agg.acc80 / m;
    agg.mean_shd /= m;
  }
  agg.mean_complexity /= agg.n;
  agg.mean_ci_id /= agg.n;
  if (agg.n_ood > 0) agg.mean_ci_ood /= agg.n_ood;
  report.scm = agg;
}

void build_convergence(const std::vector<RunResult>& results, Report& report) {
  std::map<std::string, std::vector<const RunResult*>> by_task;
  for (const auto& r : results) by_task[metrics::task_name(r.task)].push_back(&r);

  for (const auto& [task, rows] : by_task) {
    size_t horizon = 0;
    for (const RunResult* r : rows) horizon = std::max(horizon, r->curve.size());
    std::vector<ConvergencePoint> curve;
    for (size_t e = 0; e < horizon; ++e) {
      ConvergencePoint p;
      p.epoch = static_cast<int>(e) + 1;
      double total = 0.0;
      for (const RunResult* r : rows) {
        if (r->curve.empty()) continue;
        // Completed runs hold their final value.
        const double v = e < r->curve.size() ? r->curve[e] : r->curve.back();
        if (v <= loop::kNoScore) continue;
        total += v;
        ++p.n;
      }
      if (p.n > 0) {
        p.mean_best = total / p.n;
        curve.push_back(p);
      }
    }
    if (!curve.empty()) report.convergence[task] = std::move(curve);
  }
}

std::string fmt(double v, int width = 8, int precision = 2) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%*.*f", width, precision, v);
  return buf;
}

}  // namespace

Report build_report(const std::vector<RunResult>& results,
                    const std::vector<Sample>& samples) {
  if (results.empty()) throw std::invalid_argument("build_report: no results");
  Report report;
  build_cde(results, samples, report);
  build_bn(results, samples, report);
  build_scm(results, samples, report);
  build_convergence(results, report);
  return report;
}

std::string render_text(const Report& report) {
  std::string out;
  if (!report.cde.empty()) {
    out += "== CDE (per dimension, percentages) ==\n";
    out += "dim      n   SR2_ID  ACC09_ID  SR2_OOD ACC09_OOD   Complx    Prox  Cx-OOD corr\n";
    for (const auto& row : report.cde) {
      out += fmt(row.dim, 3, 0) + fmt(row.n, 7, 0) + fmt(row.sr2_id) +
             fmt(row.acc09_id, 10) + fmt(row.sr2_ood, 9) + fmt(row.acc09_ood, 10) +
             fmt(row.mean_complexity, 9) +
             (row.mean_proximity ? fmt(*row.mean_proximity) : std::string("       -")) +
             (row.complexity_ood_correlation
                  ? fmt(*row.complexity_ood_correlation, 13, 3)
                  : std::string("            -")) +
             "\n";
    }
    out += "\n";
  }
  if (report.bn) {
    const auto& b = *report.bn;
    out += "== BN (means over samples, percentages) ==\n";
    out += "setting   Prec    Rec    Acc     BM  ACC0.5  ACC0.7  ACC0.8\n";
    out += "ID     " + fmt(b.precision_id, 7) + fmt(b.recall_id, 7) + fmt(b.accuracy_id, 7) +
           fmt(b.bookmaker_id, 7) + fmt(b.acc50_id, 8) + fmt(b.acc70_id, 8) +
           fmt(b.acc80_id, 8) + "\n";
    if (b.n_ood > 0) {
      out += "OOD    " + fmt(b.precision_ood, 7) + fmt(b.recall_ood, 7) +
             fmt(b.accuracy_ood, 7) + fmt(b.bookmaker_ood, 7) + fmt(b.acc50_ood, 8) +
             fmt(b.acc70_ood, 8) + fmt(b.acc80_ood, 8) + "\n";
    }
    out += "complexity " + fmt(b.mean_complexity) +
           (b.mean_proximity ? "   proximity " + fmt(*b.mean_proximity) : std::string()) +
           "\n\n";
  }
  if (report.scm) {
    const auto& s = *report.scm;
    out += "== SCM ==\n";
    out += "n=" + std::to_string(s.n) + " (with ground truth: " + std::to_string(s.n_truth) +
           ")\n";
    if (s.n_truth > 0) {
      out += "F1 " + fmt(s.f1) + "  Prec " + fmt(s.precision) + "  Rec " + fmt(s.recall) +
             "  FDR " + fmt(s.fdr) + "\n";
      out += "ACC0.5 " + fmt(s.acc50) + "  ACC0.7 " + fmt(s.acc70) + "  ACC0.8 " +
             fmt(s.acc80) + "  SHD " + fmt(s.mean_shd) + "\n";
    }
    out += "mean edges " + fmt(s.mean_complexity) + "  CI(ID) " + fmt(s.mean_ci_id, 8, 4);
    if (s.n_ood > 0) out += "  CI(OOD) " + fmt(s.mean_ci_ood, 8, 4);
    out += "\n\n";
  }
  for (const auto& [task, curve] : report.convergence) {
    out += "== convergence (" + task + "): mean best-so-far by epoch ==\n";
    for (const auto& p : curve) {
      out += "epoch " + fmt(p.epoch, 4, 0) + "  " + fmt(p.mean_best, 10, 4) + "  (n=" +
             std::to_string(p.n) + ")\n";
    }
    out += "\n";
  }
  return out;
}

void write_report_files(const Report& report, const std::filesystem::path& dir) {
  json j;
  json cde = json::array();
  for (const auto& row : report.cde) {
    json r{{"dim", row.dim},
           {"n", row.n},
           {"sr2_id", row.sr2_id},
           {"acc09_id", row.acc09_id},
           {"n_ood", row.n_ood},
           {"sr2_ood", row.sr2_ood},
           {"acc09_ood", row.acc09_ood},
           {"mean_complexity", row.mean_complexity}};
    if (row.mean_proximity) r["mean_proximity"] = *row.mean_proximity;
    if (row.complexity_ood_correlation) {
      r["complexity_ood_correlation"] = *row.complexity_ood_correlation;
    }
    cde.push_back(std::move(r));
  }
  j["cde"] = std::move(cde);
  if (report.bn) {
    const auto& b = *report.bn;
    j["bn"] = {{"n", b.n},
               {"precision_id", b.precision_id},
               {"recall_id", b.recall_id},
               {"accuracy_id", b.accuracy_id},
               {"bookmaker_id", b.bookmaker_id},
               {"acc50_id", b.acc50_id},
               {"acc70_id", b.acc70_id},
               {"acc80_id", b.acc80_id},
               {"n_ood", b.n_ood},
               {"precision_ood", b.precision_ood},
               {"recall_ood", b.recall_ood},
               {"accuracy_ood", b.accuracy_ood},
               {"bookmaker_ood", b.bookmaker_ood},
               {"acc50_ood", b.acc50_ood},
               {"acc70_ood", b.acc70_ood},
               {"acc80_ood", b.acc80_ood},
               {"mean_complexity", b.mean_complexity}};
    if (b.mean_proximity) j["bn"]["mean_proximity"] = *b.mean_proximity;
    if (b.complexity_ood_correlation) {
      j["bn"]["complexity_ood_correlation"] = *b.complexity_ood_correlation;
    }
  }
  if (report.scm) {
    const auto& s = *report.scm;
    j["scm"] = {{"n", s.n},          {"n_truth", s.n_truth},
                {"f1", s.f1},        {"precision", s.precision},
                {"recall", s.recall}, {"fdr", s.fdr},
                {"acc50", s.acc50},  {"acc70", s.acc70},
                {"acc80", s.acc80},  {"mean_shd", s.mean_shd},
                {"mean_complexity", s.mean_complexity},
                {"mean_ci_id", s.mean_ci_id},
                {"n_ood", s.n_ood},  {"mean_ci_ood", s.mean_ci_ood}};
  }
  json conv = json::object();
  for (const auto& [task, curve] : report.convergence) {
    json points = json::array();
    for (const auto& p : curve) {
      points.push_back({{"epoch", p.epoch}, {"mean_best", p.mean_best}, {"n", p.n}});
    }
    conv[task] = std::move(points);
  }
  j["convergence"] = std::move(conv);

  std::ofstream json_out(dir / "report.json");
  json_out << j.dump(2) << "\n";
  std::ofstream text_out(dir / "report.txt");
  text_out << render_text(report);
}

}  // namespace symbolbench::bench
