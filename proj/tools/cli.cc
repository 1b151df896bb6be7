// tools/cli.cc

// Copyright 2026  The childaugment Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "childaug/audio_io.h"
#include "childaug/backend.h"
#include "childaug/backend_io.h"
#include "childaug/config.h"
#include "childaug/error.h"
#include "childaug/formants.h"
#include "childaug/lpc.h"
#include "childaug/mixer.h"
#include "childaug/spectrum.h"

namespace childaug {

namespace {

namespace fs = std::filesystem;

constexpr const char *kSeedEnv = "CHILDAUGMENT_SEED";

std::string fmt(const char *spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag,
                           const CliConfig &cfg) {
  if (flag) return *flag;
  if (cfg.seed) return *cfg.seed;
  if (const char *env = std::getenv(kSeedEnv); env != nullptr && *env) {
    char *end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || env[0] == '-')
      throw ConfigError(std::string(kSeedEnv) + " must be a nonnegative integer");
    return v;
  }
  return 0;
}

std::vector<fs::path> wav_files_in(const fs::path &dir) {
  std::vector<fs::path> out;
  for (const auto &e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::string ext = e.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".wav") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Input list: a directory of WAVs, or a text file with one `path` or
// `id path` per line (relative paths resolve against the list's directory).
std::vector<std::pair<std::string, fs::path>> read_inputs(const fs::path &in) {
  std::vector<std::pair<std::string, fs::path>> out;
  if (fs::is_directory(in)) {
    for (const fs::path &p : wav_files_in(in))
      out.emplace_back(p.stem().string(), p);
  } else {
    std::ifstream is(in);
    if (!is) throw IoError("cannot open input list '" + in.string() + "'");
    std::string line;
    for (std::size_t lineno = 1; std::getline(is, line); ++lineno) {
      std::istringstream ls(line);
      std::string a, b, extra;
      if (!(ls >> a) || a[0] == '#') continue;
      fs::path p;
      std::string id;
      if (ls >> b) {
        if (ls >> extra)
          throw FormatError(in.string() + ":" + std::to_string(lineno) +
                            ": expected '<path>' or '<id> <path>'");
        id = a;
        p = b;
      } else {
        p = a;
        id = p.stem().string();
      }
      if (p.is_relative()) p = in.parent_path() / p;
      out.emplace_back(id, p);
    }
  }
  if (out.empty()) throw EmptyInputError("no input files in '" + in.string() + "'");
  std::set<std::string> seen;
  for (const auto &[id, p] : out)
    if (!seen.insert(id).second)
      throw ConfigError("duplicate utterance id '" + id + "'");
  return out;
}

std::vector<Waveform> load_pool(const fs::path &dir, const char *what) {
  std::vector<Waveform> pool;
  if (dir.empty()) return pool;
  if (!fs::is_directory(dir))
    throw IoError(std::string(what) + " directory '" + dir.string() +
                  "' does not exist");
  for (const fs::path &p : wav_files_in(dir)) pool.push_back(read_wav(p));
  return pool;
}

unsigned resolve_jobs(unsigned flag, const CliConfig &cfg) {
  unsigned j = flag != 0 ? flag : cfg.jobs;
  if (j == 0) j = std::max(1u, std::thread::hardware_concurrency());
  return j;
}

struct AugmentArgs {
  std::string in, out, preset, config, noise_dir, rir_dir;
  std::optional<std::uint64_t> seed;
  bool log_factors = false;
  unsigned jobs = 0;
};

int cmd_augment(const AugmentArgs &a, std::ostream &out) {
  if (a.preset.empty() && a.config.empty())
    throw UsageError("augment needs --preset or --config");
  CliConfig cfg;
  if (!a.config.empty()) load_config_file(cfg, a.config);
  if (!a.preset.empty()) {
    cfg.mix = preset_config(a.preset);
    cfg.mix_given = true;
  }
  if (!cfg.mix_given)
    throw ConfigError("config sets no mix (preset, ratio or weight.<method>)");
  if (!a.noise_dir.empty()) cfg.noise_dir = a.noise_dir;
  if (!a.rir_dir.empty()) cfg.rir_dir = a.rir_dir;
  cfg.validate();
  cfg.mix.seed = resolve_seed(a.seed, cfg);

  const auto inputs = read_inputs(a.in);
  std::vector<std::string> ids;
  std::map<std::string, fs::path> sources;
  for (const auto &[id, p] : inputs) {
    ids.push_back(id);
    sources[id] = p;
  }
  const AugmentPlan plan = build_plan(ids, cfg.mix);
  AugmentResources res;
  res.noise_pool = load_pool(cfg.noise_dir, "noise");
  res.rir_pool = load_pool(cfg.rir_dir, "RIR");

  ExecuteOptions opts;
  opts.output_root = a.out;
  opts.augment = cfg.augment;
  opts.log_factors = a.log_factors;
  opts.jobs = resolve_jobs(a.jobs, cfg);
  const Manifest m = execute_plan(plan, sources, res, opts);

  out << "manifest: " << (fs::path(a.out) / "manifest.tsv").string() << '\n';
  out << "seed: " << cfg.mix.seed << '\n';
  out << "originals: " << plan.original_count()
      << " augmented: " << plan.augmented_count()
      << " failed: " << m.failures << '\n';
  for (const auto &[method, n] : plan.method_counts())
    out << "  " << method_name(method) << ": " << n << '\n';
  return m.failures == 0 ? kExitOk : kExitPartial;
}

struct AnalyzeArgs {
  std::string in, out, config;
  std::optional<long> frame;
  bool no_spectrum = false;
  std::size_t points = 256;
};

int cmd_analyze(const AnalyzeArgs &a, std::ostream &stdout_stream) {
  CliConfig cfg;
  if (!a.config.empty()) load_config_file(cfg, a.config);
  const Waveform wave = read_wav(a.in);
  std::vector<Frame> frames = frame_signal(wave, cfg.augment.frames);
  if (a.frame && (*a.frame < 0 || static_cast<std::size_t>(*a.frame) >= frames.size()))
    throw UsageError("--frame " + std::to_string(*a.frame) + " outside [0, " +
                     std::to_string(frames.size()) + ")");
  LpcOptions lpc = cfg.augment.lpc;
  if (lpc.order <= 0) lpc.order = default_lpc_order(wave.sample_rate_hz);

  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out, std::ios::trunc);
    if (!file) throw IoError("cannot write '" + a.out + "'");
  }
  std::ostream &os = a.out.empty() ? stdout_stream : file;
  os << "frame\tkind\tk\tcenter_freq_hz\tbandwidth_hz\tradius\tangle_rad\tvalues\n";
  for (const Frame &f : frames) {
    if (a.frame && f.index != static_cast<std::size_t>(*a.frame)) continue;
    const auto an = lpc_analyze(f, lpc);
    if (!an) {
      os << f.index << "\tdegenerate\t-\t-\t-\t-\t-\tsilence\n";
      continue;
    }
    std::vector<FormantPole> formants;
    try {
      const PoleSet poles = find_roots(an->model, cfg.augment.transform.roots);
      formants = pick_formants(poles, wave.sample_rate_hz,
                               cfg.augment.transform.formants);
    } catch (const ConvergenceError &) {
      os << f.index << "\tdegenerate\t-\t-\t-\t-\t-\troot-failure\n";
      continue;
    }
    for (const FormantPole &p : formants)
      os << f.index << "\tformant\t" << p.k << '\t'
         << fmt("%.3f", p.center_freq_hz) << '\t' << fmt("%.3f", p.bandwidth_hz)
         << '\t' << fmt("%.6f", p.radius()) << '\t' << fmt("%.6f", p.angle())
         << "\t-\n";
    if (!a.no_spectrum) {
      const auto db = lpc_spectrum_db(an->model.coeffs, an->model.gain, a.points);
      os << f.index << "\tspectrum\t-\t-\t-\t-\t-\t";
      for (std::size_t i = 0; i < db.size(); ++i)
        os << (i ? "," : "") << fmt("%.3f", db[i]);
      os << '\n';
    }
  }
  return kExitOk;
}

struct ScoreArgs {
  std::string emb, trials, method, weights, out;
};

int cmd_score(const ScoreArgs &a, std::ostream &stdout_stream) {
  if (a.method == "wcosine" && a.weights.empty())
    throw UsageError("--method wcosine needs --weights");
  if (a.method == "cosine" && !a.weights.empty())
    throw UsageError("--weights only applies to --method wcosine");
  const EmbeddingSet emb(read_embedding_file(a.emb));
  const std::vector<Trial> trials = read_trial_file(a.trials);
  std::vector<double> w;
  if (!a.weights.empty()) {
    w = read_weight_file(a.weights);
    if (w.size() != emb.dim())
      throw ShapeError("weights have dimension " + std::to_string(w.size()) +
                       " but embeddings have " + std::to_string(emb.dim()));
  }
  const std::vector<double> s = score_trials(trials, emb, w);
  std::vector<ScoreRecord> recs;
  for (std::size_t i = 0; i < trials.size(); ++i)
    recs.push_back({trials[i].enroll_id, trials[i].test_id, s[i]});
  if (a.out.empty()) {
    write_scores(stdout_stream, recs);
  } else {
    std::ofstream os(a.out, std::ios::trunc);
    if (!os) throw IoError("cannot write '" + a.out + "'");
    write_scores(os, recs);
  }
  return kExitOk;
}

struct TrainArgs {
  std::string emb, trials, heldout, out, config;
  std::optional<double> lambda, lr;
  std::optional<std::size_t> batch, epochs;
  std::optional<std::uint64_t> seed;
  bool normalize_in_loss = false;
};

int cmd_train_backend(const TrainArgs &a, std::ostream &out) {
  CliConfig cfg;
  if (!a.config.empty()) load_config_file(cfg, a.config);
  TrainConfig &tc = cfg.train;
  if (a.lambda) tc.lambda_reg = *a.lambda;
  if (a.lr) tc.learning_rate = *a.lr;
  if (a.batch) tc.batch_size = *a.batch;
  if (a.epochs) tc.epochs = *a.epochs;
  if (a.normalize_in_loss) tc.normalize_in_loss = true;
  tc.seed = resolve_seed(a.seed, cfg);
  tc.validate();

  const EmbeddingSet emb(read_embedding_file(a.emb));
  const std::vector<Trial> trials = read_trial_file(a.trials);
  std::vector<Trial> heldout;
  if (!a.heldout.empty()) heldout = read_trial_file(a.heldout);
  const TrainReport r = train_weighted_cosine(trials, emb, tc, heldout);
  write_weight_file(a.out, r.weights);
  out << "weights: " << a.out << '\n';
  out << "selected_epoch: " << r.selected_epoch << '\n';
  out << "loss: " << fmt("%.6f", r.initial_loss) << " -> "
      << fmt("%.6f", r.final_loss) << '\n';
  out << "heldout_EER: " << fmt("%.4f", 100.0 * r.initial_heldout_eer)
      << "% -> " << fmt("%.4f", 100.0 * r.selected_heldout_eer) << "%\n";
  return kExitOk;
}

struct EvalArgs {
  std::string scores, trials;
  double p_target = 0.01;
};

int cmd_eval(const EvalArgs &a, std::ostream &out) {
  const auto scores = read_score_file(a.scores);
  const auto trials = read_trial_file(a.trials);
  const auto labeled = label_scores(scores, trials);
  const EerResult eer = compute_eer(labeled);
  const double dcf = compute_min_dcf(labeled, a.p_target);
  out << "EER=" << fmt("%.4f", 100.0 * eer.eer) << "% minDCF="
      << fmt("%.6f", dcf) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err) {
  CLI::App app{"Child-like speech augmentation and speaker verification "
               "backend toolkit",
               "childaug"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "0.1.0");

  AugmentArgs aug;
  auto *augment = app.add_subcommand("augment", "Build and run an augmentation plan");
  augment->add_option("--in", aug.in, "Directory of WAVs or a list file ('path' or 'id path' per line)")->required();
  augment->add_option("--out", aug.out, "Output directory")->required();
  augment->add_option("--preset", aug.preset, "Mix preset: " + [] {
    std::string s;
    for (const auto &n : preset_names()) s += (s.empty() ? "" : ", ") + n;
    return s;
  }());
  augment->add_option("--config", aug.config, "Config file of 'key = value' lines");
  augment->add_option("--seed", aug.seed, "Seed (falls back to config, then $CHILDAUGMENT_SEED, then 0)");
  augment->add_flag("--log-factors", aug.log_factors, "Write factors.tsv with per-frame factors");
  augment->add_option("--jobs", aug.jobs, "Parallel utterances (default: one per core)");
  augment->add_option("--noise-dir", aug.noise_dir, "Directory of noise WAVs");
  augment->add_option("--rir-dir", aug.rir_dir, "Directory of room impulse response WAVs");

  AnalyzeArgs ana;
  auto *analyze = app.add_subcommand("analyze", "Per-frame formant table and LPC spectra as TSV");
  analyze->add_option("--in", ana.in, "Input WAV")->required();
  analyze->add_option("--frame", ana.frame, "Only this frame index");
  analyze->add_option("--out", ana.out, "Output TSV (default: stdout)");
  analyze->add_option("--config", ana.config, "Config file (framing, LPC order)");
  analyze->add_flag("--no-spectrum", ana.no_spectrum, "Omit spectrum rows");
  analyze->add_option("--points", ana.points, "Spectrum samples per frame (default 256)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{65536}));

  ScoreArgs sc;
  auto *score = app.add_subcommand("score", "Score a trial list");
  score->add_option("--emb", sc.emb, "EMB1 embedding file")->required();
  score->add_option("--trials", sc.trials, "Trial list")->required();
  score->add_option("--method", sc.method, "cosine or wcosine")
      ->required()
      ->check(CLI::IsMember({"cosine", "wcosine"}));
  score->add_option("--weights", sc.weights, "Weight file (wcosine)");
  score->add_option("--out", sc.out, "Score file (default: stdout)");

  TrainArgs tr;
  auto *train = app.add_subcommand("train-backend", "Train weighted-cosine weights");
  train->add_option("--emb", tr.emb, "EMB1 embedding file")->required();
  train->add_option("--trials", tr.trials, "Labeled training trials")->required();
  train->add_option("--out", tr.out, "Output weight file")->required();
  train->add_option("--heldout", tr.heldout, "Held-out trials for model selection (default: split off the training trials)");
  train->add_option("--config", tr.config, "Config file (train.* keys)");
  train->add_option("--lambda", tr.lambda, "Regularization coefficient (default 1e-4)");
  train->add_option("--lr", tr.lr, "Adam learning rate (default 1e-3)");
  train->add_option("--batch", tr.batch, "Trials per class-balanced batch (default 256)");
  train->add_option("--epochs", tr.epochs, "Epochs (default 50)");
  train->add_option("--seed", tr.seed, "Seed (falls back to config, then $CHILDAUGMENT_SEED, then 0)");
  train->add_flag("--normalize-in-loss", tr.normalize_in_loss, "Use the normalized weighted cosine inside the loss");

  EvalArgs ev;
  auto *eval = app.add_subcommand("eval", "EER and minDCF of a score file");
  eval->add_option("--scores", ev.scores, "Score file")->required();
  eval->add_option("--trials", ev.trials, "Trial list with labels")->required();
  eval->add_option("--p-target", ev.p_target, "Target prior (default 0.01)")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp &e) {
    out << (app.get_subcommands().empty() ? app.help()
                                          : app.get_subcommands().front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion &) {
    out << "0.1.0\n";
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "childaug: " << e.what() << "\n";
    err << "run 'childaug --help' for usage\n";
    return kExitError;
  }

  try {
    if (augment->parsed()) return cmd_augment(aug, out);
    if (analyze->parsed()) return cmd_analyze(ana, out);
    if (score->parsed()) return cmd_score(sc, out);
    if (train->parsed()) return cmd_train_backend(tr, out);
    if (eval->parsed()) return cmd_eval(ev, out);
  } catch (const std::exception &e) {
    err << "childaug: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace childaug
