// Command-line front end: ingest, centrality, rank, cluster, report,
// export-dot and aliases.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "mailgraph/centrality.hpp"
#include "mailgraph/clustering.hpp"
#include "mailgraph/corpus_ingest.hpp"
#include "mailgraph/csv.hpp"
#include "mailgraph/error.hpp"
#include "mailgraph/graph_model.hpp"
#include "mailgraph/report.hpp"

namespace mg = mailgraph;

namespace {

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw mg::Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw mg::Error("write to '" + path + "' failed");
}

mg::WeightedDigraph load_with_roster(const std::string& matrix, const std::string& roster) {
  auto g = mg::load_matrix_csv(matrix);
  if (roster.empty()) return g;
  return mg::WeightedDigraph(g.roster().annotated(mg::load_roster_csv(roster)), g.m());
}

mg::TomVariant variant_or_throw(const std::string& name) {
  auto v = mg::parse_tom_variant(name);
  if (!v) throw mg::ConfigError("unknown TOM variant '" + name + "'");
  return *v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Communication-graph centrality and clustering toolkit"};
  app.require_subcommand(1);

  // ingest
  struct {
    std::string input, aliases, roster, out, log, domain = "enron.com";
    bool no_dedupe = false;
  } ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Build the weighted adjacency matrix from messages");
  ingest_cmd->add_option("--input", ingest.input, "Message directory or from,to,cc CSV")->required();
  ingest_cmd->add_option("--aliases", ingest.aliases, "Alias CSV (pattern,canonical_id)")->required();
  ingest_cmd->add_option("--roster", ingest.roster, "Roster CSV")->required();
  ingest_cmd->add_option("--out", ingest.out, "Output adjacency CSV")->required();
  ingest_cmd->add_option("--log", ingest.log, "Diagnostics log (default: stderr)");
  ingest_cmd->add_option("--domain", ingest.domain, "Domain whose addresses are kept");
  ingest_cmd->add_flag("--no-dedupe", ingest.no_dedupe, "Keep duplicate copies of messages");

  // aliases
  struct {
    std::string roster, templates, out, domain = "enron.com";
  } aliases;
  auto* aliases_cmd = app.add_subcommand("aliases", "Expand alias templates against a roster");
  aliases_cmd->add_option("--roster", aliases.roster, "Roster CSV")->required();
  aliases_cmd->add_option("--templates", aliases.templates, "Template file, one per line")->required();
  aliases_cmd->add_option("--out", aliases.out, "Output alias CSV")->required();
  aliases_cmd->add_option("--domain", aliases.domain, "Domain filter");

  // centrality
  struct {
    std::string matrix, measure, variant = "paper", out;
    double alpha = 0.5, tol = 1e-10;
    long max_iter = 100000;
    bool weighted = false, strict = false;
  } cent;
  auto* cent_cmd = app.add_subcommand("centrality", "Compute one centrality measure");
  cent_cmd->add_option("--matrix", cent.matrix, "Adjacency CSV")->required();
  cent_cmd->add_option("--measure", cent.measure,
                       "degree|strength|kappa|eigen_sent|eigen_received|closeness|betweenness|tom")
      ->required();
  cent_cmd->add_option("--alpha", cent.alpha, "Kappa tuning parameter");
  cent_cmd->add_option("--variant", cent.variant, "TOM variant: paper|standard");
  cent_cmd->add_flag("--weighted", cent.weighted, "Closeness over reciprocal-weight lengths");
  cent_cmd->add_option("--tol", cent.tol, "Eigencentrality residual tolerance");
  cent_cmd->add_option("--max-iter", cent.max_iter, "Eigencentrality iteration cap");
  cent_cmd->add_flag("--strict", cent.strict, "Fail on a non-positive TOM denominator");
  cent_cmd->add_option("--out", cent.out, "Scores CSV (default: stdout)");

  // rank
  struct {
    std::string scores;
    std::size_t top = 10;
  } rank;
  auto* rank_cmd = app.add_subcommand("rank", "Print the top entries of a scores CSV");
  rank_cmd->add_option("--scores", rank.scores, "Scores CSV")->required();
  rank_cmd->add_option("--top", rank.top, "Number of entries");

  // cluster
  struct {
    std::string matrix, basis = "adjacency", variant = "paper", out, dendrogram,
        dendrogram_format = "newick", linkage = "average";
    double cut = 0.9;
    std::size_t min_size = 4;
    bool strict = false, tom_scaled = false;
  } clus;
  auto* clus_cmd = app.add_subcommand("cluster", "Hierarchical clustering and static cut");
  clus_cmd->add_option("--matrix", clus.matrix, "Adjacency CSV")->required();
  clus_cmd->add_option("--basis", clus.basis, "adjacency|tom");
  clus_cmd->add_option("--variant", clus.variant, "TOM variant: paper|standard");
  clus_cmd->add_option("--cut", clus.cut, "Maximum merge height kept");
  clus_cmd->add_option("--min-size", clus.min_size, "Minimum cluster size");
  clus_cmd->add_option("--linkage", clus.linkage, "average|single|complete");
  clus_cmd->add_flag("--strict", clus.strict, "Fail on TOM entries outside [0, 1]");
  clus_cmd->add_flag("--tom-scaled", clus.tom_scaled, "Compute the TOM on max-scaled weights");
  clus_cmd->add_option("--out", clus.out, "clusters JSON (default: stdout)");
  clus_cmd->add_option("--dendrogram", clus.dendrogram, "Write the dendrogram here");
  clus_cmd->add_option("--dendrogram-format", clus.dendrogram_format, "newick|json");

  // report
  struct {
    std::string matrix, roster, out, tom_variant = "paper";
    std::size_t top = 10;
    double alpha = 0.5, tol = 1e-10;
    bool raw = false, weighted = false;
  } rep;
  auto* rep_cmd = app.add_subcommand("report", "All measures, top-k lists and correlations");
  rep_cmd->add_option("--matrix", rep.matrix, "Adjacency CSV")->required();
  rep_cmd->add_option("--roster", rep.roster, "Roster CSV for names and departments");
  rep_cmd->add_option("--top", rep.top, "Entries per measure");
  rep_cmd->add_option("--out", rep.out, "report JSON (default: stdout)");
  rep_cmd->add_option("--alpha", rep.alpha, "Kappa tuning parameter");
  rep_cmd->add_option("--tom-variant", rep.tom_variant, "paper|standard");
  rep_cmd->add_option("--tol", rep.tol, "Eigencentrality residual tolerance");
  rep_cmd->add_flag("--raw-correlation", rep.raw, "Correlate raw scores instead of ranks");
  rep_cmd->add_flag("--weighted-closeness", rep.weighted, "Closeness over reciprocal weights");

  // export-dot
  struct {
    std::string matrix, roster, out;
    double threshold = 0.0;
  } dot;
  auto* dot_cmd = app.add_subcommand("export-dot", "Thresholded undirected graph in DOT");
  dot_cmd->add_option("--matrix", dot.matrix, "Adjacency CSV")->required();
  dot_cmd->add_option("--roster", dot.roster, "Roster CSV for labels");
  dot_cmd->add_option("--threshold", dot.threshold, "Minimum undirected weight");
  dot_cmd->add_option("--out", dot.out, "DOT file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest_cmd) {
      mg::IngestDiagnostics diag;
      auto roster = mg::load_roster_csv(ingest.roster);
      auto table = mg::load_alias_csv(ingest.aliases, ingest.domain);
      std::vector<mg::EmailRecord> records =
          std::filesystem::is_directory(ingest.input) ? mg::read_corpus_dir(ingest.input, &diag)
                                                      : mg::read_corpus_csv(ingest.input, &diag);
      auto g = mg::accumulate(records, table, roster, {.dedupe = !ingest.no_dedupe}, &diag);
      mg::save_matrix_csv(g, ingest.out);
      if (ingest.log.empty()) std::cerr << diag.to_text();
      else write_or_print(ingest.log, diag.to_text());
    } else if (*aliases_cmd) {
      mg::IngestDiagnostics diag;
      auto roster = mg::load_roster_csv(aliases.roster);
      auto table = mg::expand_alias_templates(roster, mg::load_alias_templates(aliases.templates),
                                              aliases.domain, &diag);
      mg::save_alias_csv(table, aliases.out);
      for (const auto& n : diag.notes) std::cerr << n << '\n';
    } else if (*cent_cmd) {
      auto measure = mg::parse_measure(cent.measure);
      if (!measure) throw mg::ConfigError("unknown measure '" + cent.measure + "'");
      auto g = mg::load_matrix_csv(cent.matrix);
      auto u = mg::symmetrize(g);
      mg::TomOptions tom{variant_or_throw(cent.variant), cent.strict};
      mg::EigenOptions eig{cent.tol, cent.max_iter};
      mg::CentralityResult r;
      switch (*measure) {
        case mg::Measure::degree: r = mg::degree(u); break;
        case mg::Measure::strength: r = mg::strength(u); break;
        case mg::Measure::kappa: r = mg::kappa(u, cent.alpha); break;
        case mg::Measure::eigen_sent: r = mg::eigencentrality(g, mg::Direction::sent, eig); break;
        case mg::Measure::eigen_received:
          r = mg::eigencentrality(g, mg::Direction::received, eig);
          break;
        case mg::Measure::closeness: r = mg::closeness(g, {cent.weighted}); break;
        case mg::Measure::betweenness: r = mg::betweenness(u); break;
        case mg::Measure::tom: r = mg::tom_centrality(u, tom); break;
      }
      write_or_print(cent.out, mg::format_scores_csv(r));
    } else if (*rank_cmd) {
      auto r = mg::load_scores_csv(rank.scores);
      std::cout << "rank,canonical_id,score\n";
      for (const auto& e : mg::rank_of(r, rank.top))
        std::cout << e.rank << ',' << mg::csv::escape(e.id) << ','
                  << mg::csv::format_real(e.score, 17) << '\n';
    } else if (*clus_cmd) {
      auto basis = mg::parse_basis(clus.basis);
      if (!basis) throw mg::ConfigError("unknown basis '" + clus.basis + "'");
      auto linkage = mg::parse_linkage(clus.linkage);
      if (!linkage) throw mg::ConfigError("unknown linkage '" + clus.linkage + "'");
      if (clus.dendrogram_format != "newick" && clus.dendrogram_format != "json")
        throw mg::ConfigError("unknown dendrogram format '" + clus.dendrogram_format + "'");
      auto g = mg::load_matrix_csv(clus.matrix);
      auto u = mg::symmetrize(g);
      mg::DissimilarityOptions opts;
      opts.tom.variant = variant_or_throw(clus.variant);
      opts.strict = clus.strict;
      opts.scale_before_tom = clus.tom_scaled;
      auto d = mg::dissimilarity(u, *basis, opts);
      auto tree = mg::agglomerate(d, *linkage);
      auto clusters = mg::cut(tree, clus.cut, clus.min_size);
      std::map<std::string, std::string> params{
          {"basis", std::string(mg::to_string(*basis))},
          {"linkage", std::string(mg::to_string(*linkage))},
          {"dissimilarity", *basis == mg::DissimilarityBasis::tom ? "1 - TOM" : "1 - u / max u"},
          {"merge_ties", "smallest_member_pair"},
          {"clamped_entries", std::to_string(d.clamped)}};
      if (*basis == mg::DissimilarityBasis::tom) {
        params["tom_variant"] = clus.variant;
        params["tom_input"] = clus.tom_scaled ? "scaled" : "raw";
      }
      write_or_print(clus.out, mg::clusters_to_json(clusters, u.roster(), params));
      if (!clus.dendrogram.empty()) {
        const bool json = clus.dendrogram_format == "json";
        std::string text = mg::export_dendrogram(
            tree, u.roster(), json ? mg::DendrogramFormat::json : mg::DendrogramFormat::newick);
        if (!json) text += '\n';
        write_or_print(clus.dendrogram, text);
      }
    } else if (*rep_cmd) {
      mg::ReportOptions opts;
      opts.top = rep.top;
      opts.alpha = rep.alpha;
      opts.tom.variant = variant_or_throw(rep.tom_variant);
      opts.eigen.tolerance = rep.tol;
      opts.raw_score_correlation = rep.raw;
      opts.closeness.weighted = rep.weighted;
      auto report = mg::build_report(rep.matrix, rep.roster, opts);
      write_or_print(rep.out, mg::report_to_json(report));
    } else if (*dot_cmd) {
      auto g = load_with_roster(dot.matrix, dot.roster);
      write_or_print(dot.out, mg::export_dot(mg::symmetrize(g), dot.threshold));
    }
  } catch (const mg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
