#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qmac/fuzz.hpp"
#include "qmac/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariantFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitResourceLimit = 3;

struct RegionConfig {
  std::string kind;
  std::string channel;
  int k = 1;
  std::uint64_t seed = 0;
  int samples = 33;
  int restarts = 32;
  int evals = 2000;
  std::string out;
  std::string format = "both";
};

int run_region(const RegionConfig& cfg) {
  using namespace qmac;
  if (cfg.k != 1) throw InputError("region: only k=1 is supported for the optimizer sweep");
  NamedChannel nc = resolve_channel(cfg.channel);
  OptimBudget budget{cfg.restarts, cfg.evals};

  Region2D region;
  Region2D oracle;
  bool have_oracle = false;
  if (cfg.kind == "cq") {
    region = optimize_cq_region(nc.channel, budget, cfg.seed, cfg.samples);
    if (nc.family == ChannelFamily::erasure) {
      std::vector<double> grid;
      for (int i = 0; i <= 200; ++i) grid.push_back(0.5 * i / 200.0);
      oracle = erasure_cq_curve(nc.erasure_d, grid);
      have_oracle = true;
    }
  } else {
    region = optimize_qq_region(nc.channel, budget, cfg.seed, cfg.samples);
    if (nc.family == ChannelFamily::phaseflip) {
      oracle = make_region({{"Qa", "Qb"}}, phase_flip_pentagon(nc.flip_p).vertices());
      have_oracle = true;
    }
  }

  json meta{{"channel", nc.id},
            {"k", cfg.k},
            {"seed", cfg.seed},
            {"samples", cfg.samples},
            {"restarts", cfg.restarts},
            {"evals", cfg.evals}};
  if (have_oracle) meta["hausdorff_to_oracle"] = region_hausdorff(region, oracle);

  const std::string base = cfg.out.empty() ? ("region_" + cfg.kind) : cfg.out;
  if (cfg.format != "csv") write_file(base + ".json", region_to_json(region, meta).dump(2) + "\n");
  if (cfg.format != "json") write_file(base + ".csv", region_to_csv(region));
  if (have_oracle) {
    json ometa{{"channel", nc.id}, {"kind", "oracle"}};
    if (cfg.format != "csv")
      write_file(base + ".oracle.json", region_to_json(oracle, ometa).dump(2) + "\n");
    if (cfg.format != "json") write_file(base + ".oracle.csv", region_to_csv(oracle));
    std::cout << "hausdorff_to_oracle=" << format_sig12(region_hausdorff(region, oracle)) << "\n";
  }
  std::cout << "region " << cfg.kind << " " << nc.id << ": " << region.hull.size()
            << " hull vertices -> " << base << "\n";
  return kExitOk;
}

int run_channel(const std::string& action, const std::string& spec, const std::string& out) {
  using namespace qmac;
  NamedChannel nc = resolve_channel(spec);
  const Channel& ch = nc.channel;

  if (action == "inspect") {
    const double commute = ch.kraus_commutator_norm();
    std::cout << "id=" << nc.id << "\n"
              << "in=" << ch.in_shape().str() << " out=" << ch.out_shape().str() << "\n"
              << "arity=" << (ch.arity() == Arity::mac2 ? "mac2" : "single") << "\n"
              << "kraus=" << ch.kraus().size() << "\n"
              << "cptp_margin=" << format_sig12(ch.cptp_margin()) << "\n"
              << "commuting_kraus=" << (commute <= 1e-10 ? "true" : "false") << "\n";
    return kExitOk;
  }

  // convert: emit Kraus, Stinespring and complement forms plus the round-trip
  // action distance.
  Isometry v = kraus_to_isometry(ch);
  Channel back = isometry_to_kraus(v);
  Channel comp = complement(ch);

  json j;
  j["name"] = nc.id;
  j["kraus_channel"] = channel_to_json(ch, nc.id);
  json data = json::array();
  for (Eigen::Index i = 0; i < v.mat.rows(); ++i)
    for (Eigen::Index c = 0; c < v.mat.cols(); ++c)
      data.push_back(json::array({v.mat(i, c).real(), v.mat(i, c).imag()}));
  j["stinespring"] = json{{"matrix", data},
                          {"env_dim", v.env_dim()},
                          {"in_shape", shape_to_json(v.in_shape)},
                          {"out_shape", shape_to_json(v.out_shape)}};
  j["complement"] = channel_to_json(comp, nc.id + ".complement");
  j["roundtrip_action_distance"] = channel_distance(ch, back);

  const std::string path = out.empty() ? "channel.json" : out;
  write_file(path, j.dump(2) + "\n");
  std::cout << "convert " << nc.id << " -> " << path
            << " (roundtrip_action_distance=" << format_sig12(channel_distance(ch, back))
            << ")\n";
  return kExitOk;
}

int run_fuzz_cmd(const std::string& suite, int trials, std::uint64_t seed,
                 const std::string& out) {
  using namespace qmac;
  FuzzReport report = run_fuzz(suite, trials, seed);

  json j{{"suite", report.suite},
         {"trials", report.trials},
         {"seed", report.seed},
         {"worst_margin", report.worst_margin},
         {"failures", json::array()}};
  for (const auto& f : report.failures)
    j["failures"].push_back(json{{"trial", f.trial}, {"check", f.check}, {"margin", f.margin}});
  if (!out.empty()) write_file(out, j.dump(2) + "\n");

  std::cout << "fuzz " << suite << ": trials=" << trials
            << " worst_margin=" << format_sig12(report.worst_margin)
            << " failures=" << report.failures.size() << "\n";
  if (!report.ok()) {
    for (const auto& f : report.failures)
      std::cout << "  FAIL trial=" << f.trial << " seed=" << seed << " check=" << f.check
                << " margin=" << format_sig12(f.margin) << "\n";
    return kExitInvariantFailure;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-letter rate regions and entropic calculus for two-sender quantum channels"};
  app.require_subcommand(1);

  RegionConfig rcfg;
  CLI::App* region = app.add_subcommand("region", "Sweep a rate region and write JSON/CSV");
  region->add_option("kind", rcfg.kind, "cq or qq")->required()->check(CLI::IsMember({"cq", "qq"}));
  region->add_option("--channel", rcfg.channel, "channel id or JSON file")->required();
  region->add_option("--k", rcfg.k, "block length (1)");
  region->add_option("--seed", rcfg.seed, "master seed")->required();
  region->add_option("--samples", rcfg.samples, "scalarization sweep points");
  region->add_option("--restarts", rcfg.restarts, "optimizer restarts per sweep point");
  region->add_option("--evals", rcfg.evals, "objective evaluations per restart");
  region->add_option("--out", rcfg.out, "output path base");
  region->add_option("--format", rcfg.format, "json, csv or both")
      ->check(CLI::IsMember({"json", "csv", "both"}));

  std::string ch_action, ch_spec, ch_out;
  CLI::App* channel = app.add_subcommand("channel", "Convert or inspect a channel");
  channel->add_option("action", ch_action, "convert or inspect")
      ->required()
      ->check(CLI::IsMember({"convert", "inspect"}));
  channel->add_option("--channel", ch_spec, "channel id or JSON file")->required();
  channel->add_option("--out", ch_out, "output path");

  std::string fz_suite, fz_out;
  int fz_trials = 100;
  std::uint64_t fz_seed = 0;
  CLI::App* fuzz = app.add_subcommand("fuzz", "Run an inequality fuzz suite");
  fuzz->add_option("suite", fz_suite, "suite name")
      ->required()
      ->check(CLI::IsMember(qmac::fuzz_suites()));
  fuzz->add_option("--trials", fz_trials, "trial count")->check(CLI::PositiveNumber);
  fuzz->add_option("--seed", fz_seed, "master seed")->required();
  fuzz->add_option("--out", fz_out, "report path");

  try {
    app.parse(argc, argv);
    if (region->parsed()) return run_region(rcfg);
    if (channel->parsed()) return run_channel(ch_action, ch_spec, ch_out);
    if (fuzz->parsed()) return run_fuzz_cmd(fz_suite, fz_trials, fz_seed, fz_out);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  } catch (const qmac::DimOverflowError& e) {
    std::cerr << "error (resource limit): " << e.what() << "\n";
    return kExitResourceLimit;
  } catch (const qmac::InputError& e) {
    std::cerr << "error (input): " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error (input): " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
