// mixer.cc

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

#include "childaug/mixer.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "childaug/error.h"
#include "childaug/log.h"

namespace childaug {

namespace {

std::string normalize_preset(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  std::replace(s.begin(), s.end(), '/', '-');
  std::replace(s.begin(), s.end(), '_', '-');
  return s;
}

std::size_t slots_for_source(std::size_t s, double x) {
  auto fl = [](double v) {
    return static_cast<std::size_t>(std::floor(v + 1e-9));
  };
  return fl(static_cast<double>(s + 1) * x) - fl(static_cast<double>(s) * x);
}

// Largest-remainder split of `total` slots in proportion to `weights`; each
// count is within one of its exact quota. Ties go to the earlier method.
std::vector<long> apportion(const std::vector<double> &weights, std::size_t total) {
  double sum = 0.0;
  for (double w : weights) sum += w;
  std::vector<long> out(weights.size(), 0);
  std::vector<std::pair<double, std::size_t>> rem;
  std::size_t used = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double q = weights[i] / sum * static_cast<double>(total);
    out[i] = static_cast<long>(std::floor(q));
    used += static_cast<std::size_t>(out[i]);
    rem.emplace_back(q - std::floor(q), i);
  }
  std::stable_sort(rem.begin(), rem.end(),
                   [](const auto &a, const auto &b) { return a.first > b.first; });
  for (std::size_t k = 0; used < total && k < rem.size(); ++k, ++used)
    ++out[rem[k].second];
  return out;
}

std::uint64_t entry_seed(std::uint64_t seed, const std::string &id,
                         std::optional<Method> method, std::size_t slot) {
  std::uint64_t h = mix_seed(seed, hash_string(id));
  h = mix_seed(h, method ? static_cast<std::uint64_t>(*method) + 1 : 0);
  return mix_seed(h, slot);
}

}  // namespace

void MixConfig::validate() const {
  if (!(ratio_x >= 0.0) || !std::isfinite(ratio_x))
    throw ConfigError("ratio must be a nonnegative number");
  double sum = 0.0;
  bool any_positive = false;
  for (const auto &[m, w] : method_weights) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw ConfigError(std::string("weight of ") + method_name(m) +
                        " must be nonnegative");
    sum += w;
    any_positive = any_positive || w > 0.0;
  }
  if (std::abs(sum - ratio_x) > 1e-9) {
    std::ostringstream os;
    os.precision(12);
    os << "method weights sum to " << sum << " but ratio is " << ratio_x;
    throw ConfigError(os.str());
  }
  if (ratio_x > 0.0 && !any_positive)
    throw ConfigError("ratio > 0 needs at least one positive method weight");
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out{"baseline-3-1"};
  for (int y = 3; y <= 6; ++y) out.push_back("baseline-3-" + std::to_string(y));
  for (int y = 7; y <= 11; ++y) out.push_back("proposed-3-" + std::to_string(y));
  return out;
}

MixConfig preset_config(std::string_view name, std::uint64_t seed) {
  const std::string key = normalize_preset(name);
  int methods = 0;
  for (const std::string &p : preset_names())
    if (p == key) methods = std::stoi(p.substr(p.rfind('-') + 1));
  if (methods == 0)
    throw ConfigError("unknown preset '" + std::string(name) + "'");
  MixConfig cfg;
  cfg.ratio_x = 3.0;
  cfg.seed = seed;
  const double w = 3.0 / methods;
  for (int i = 0; i < methods; ++i) cfg.method_weights[kAllMethods[i]] = w;
  // Guard the 1e-9 sum check against accumulated rounding of x/y.
  double sum = 0.0;
  for (const auto &kv : cfg.method_weights) sum += kv.second;
  cfg.ratio_x = std::abs(sum - 3.0) <= 1e-12 ? 3.0 : sum;
  return cfg;
}

std::string PlanEntry::method_label() const {
  return method ? method_name(*method) : "original";
}

std::string PlanEntry::output_stem() const {
  if (!method) return source_id;
  return source_id + "-" + method_name(*method) + "-" + std::to_string(slot);
}

std::size_t AugmentPlan::original_count() const {
  return static_cast<std::size_t>(std::count_if(
      entries.begin(), entries.end(),
      [](const PlanEntry &e) { return e.is_original(); }));
}

std::size_t AugmentPlan::augmented_count() const {
  return entries.size() - original_count();
}

std::map<Method, std::size_t> AugmentPlan::method_counts() const {
  std::map<Method, std::size_t> out;
  for (const PlanEntry &e : entries)
    if (e.method) ++out[*e.method];
  return out;
}

AugmentPlan build_plan(const std::vector<std::string> &ids,
                       const MixConfig &config) {
  if (ids.empty()) throw ConfigError("no source utterances");
  config.validate();

  std::vector<Method> methods;
  std::vector<double> weights;
  for (Method m : kAllMethods) {
    auto it = config.method_weights.find(m);
    if (it != config.method_weights.end() && it->second > 0.0) {
      methods.push_back(m);
      weights.push_back(it->second);
    }
  }
  std::vector<std::size_t> slots(ids.size());
  std::size_t total = 0;
  for (std::size_t s = 0; s < ids.size(); ++s)
    total += slots[s] = methods.empty() ? 0 : slots_for_source(s, config.ratio_x);
  const std::vector<long> quota = apportion(weights, total);
  std::vector<long> current(methods.size(), 0);

  AugmentPlan plan;
  for (std::size_t s = 0; s < ids.size(); ++s) {
    const std::string &id = ids[s];
    plan.entries.push_back({id, std::nullopt, 0, entry_seed(config.seed, id, std::nullopt, 0)});
    for (std::size_t slot = 0; slot < slots[s]; ++slot) {
      // Smooth weighted round robin over the integer quotas; ties go to the
      // earlier method.
      std::size_t best = 0;
      for (std::size_t i = 0; i < methods.size(); ++i) {
        current[i] += quota[i];
        if (current[i] > current[best]) best = i;
      }
      current[best] -= static_cast<long>(total);
      const Method m = methods[best];
      plan.entries.push_back({id, m, slot, entry_seed(config.seed, id, m, slot)});
    }
  }
  return plan;
}

void Manifest::write(std::ostream &os) const {
  os << "output_path\tsource_id\tmethod\tseed\tfactor_ref\tstatus\n";
  for (const ManifestRow &r : rows)
    os << r.output_path << '\t' << r.source_id << '\t' << r.method << '\t'
       << r.seed << '\t' << r.factor_ref << '\t' << r.status << '\n';
}

Manifest execute_plan(const AugmentPlan &plan,
                      const std::map<std::string, std::filesystem::path> &sources,
                      const AugmentResources &resources,
                      const ExecuteOptions &opts) {
  namespace fs = std::filesystem;
  opts.augment.validate();
  for (const PlanEntry &e : plan.entries) {
    if (!e.method) continue;
    if (needs_noise(*e.method) && resources.noise_pool.empty())
      throw ConfigError(std::string("plan uses ") + method_name(*e.method) +
                        " but the noise pool is empty");
    if (needs_rir(*e.method) && resources.rir_pool.empty())
      throw ConfigError(std::string("plan uses ") + method_name(*e.method) +
                        " but the RIR pool is empty");
  }

  const fs::path &root = opts.output_root;
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw IoError("cannot create '" + root.string() + "': " + ec.message());
  {
    std::vector<std::string> dirs{"original"};
    for (const PlanEntry &e : plan.entries) dirs.push_back(e.method_label());
    std::sort(dirs.begin(), dirs.end());
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
    for (const std::string &d : dirs) {
      fs::create_directories(root / d, ec);
      if (ec) throw IoError("cannot create '" + (root / d).string() + "'");
    }
  }

  Manifest manifest;
  manifest.rows.resize(plan.entries.size());
  std::vector<std::vector<FactorRecord>> factors(plan.entries.size());

  auto run_entry = [&](std::size_t i) {
    const PlanEntry &e = plan.entries[i];
    ManifestRow &row = manifest.rows[i];
    row.source_id = e.source_id;
    row.method = e.method_label();
    row.seed = e.seed;
    row.factor_ref = "-";
    const std::string rel = e.method_label() + "/" + e.output_stem() + ".wav";
    row.output_path = rel;
    try {
      auto src = sources.find(e.source_id);
      if (src == sources.end())
        throw IoError("no path for source '" + e.source_id + "'");
      const Waveform wave = read_wav(src->second);
      Waveform out;
      if (e.is_original()) {
        out = wave;
      } else {
        Rng rng(e.seed);
        AugmentStats stats;
        out = augment_utterance(wave, *e.method, rng, opts.augment, resources,
                                &stats, e.output_stem());
        if (opts.log_factors && !stats.factors.empty()) {
          row.factor_ref = e.output_stem();
          factors[i] = std::move(stats.factors);
        }
      }
      write_wav(root / rel, out);
      row.status = "ok";
    } catch (const std::exception &ex) {
      row.status = std::string("error: ") + ex.what();
      row.factor_ref = "-";
      factors[i].clear();
      // Tabs or newlines would break the TSV.
      std::replace(row.status.begin(), row.status.end(), '\t', ' ');
      std::replace(row.status.begin(), row.status.end(), '\n', ' ');
      log_warning(e.output_stem() + ": " + ex.what());
    }
  };

  const unsigned jobs = std::max(1u, opts.jobs);
  if (jobs == 1 || plan.entries.size() < 2) {
    for (std::size_t i = 0; i < plan.entries.size(); ++i) run_entry(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned n = std::min<std::size_t>(jobs, plan.entries.size());
    for (unsigned t = 0; t < n; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < plan.entries.size(); i = next++)
          run_entry(i);
      });
    for (std::thread &t : pool) t.join();
  }

  for (const ManifestRow &r : manifest.rows)
    if (r.status != "ok") ++manifest.failures;

  {
    std::ofstream out(root / "manifest.tsv", std::ios::trunc);
    if (!out) throw IoError("cannot write manifest.tsv");
    manifest.write(out);
  }
  if (opts.log_factors) {
    std::ofstream out(root / "factors.tsv", std::ios::trunc);
    if (!out) throw IoError("cannot write factors.tsv");
    write_factor_log_header(out);
    for (const auto &recs : factors)
      for (const FactorRecord &r : recs) write_factor_record(out, r);
  }
  return manifest;
}

}  // namespace childaug
