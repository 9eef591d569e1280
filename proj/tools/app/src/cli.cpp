#include "mgmask/app/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <iostream>

#include "batch.hpp"
#include "commands.hpp"
#include "mgmask/error.hpp"

namespace mgmask::app {
namespace {

constexpr int kUsageError = 2;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    if (end > start) out.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

PatchSize parse_patch(const std::string& text) {
  const auto parts = split_list(text);
  std::uint32_t v[3] = {};
  bool ok = parts.size() == 3;
  for (std::size_t i = 0; ok && i < 3; ++i) {
    try {
      std::size_t used = 0;
      const unsigned long n = std::stoul(parts[i], &used);
      ok = used == parts[i].size() && n > 0 && n <= 0xFFFFFFFFul;
      v[i] = static_cast<std::uint32_t>(n);
    } catch (const std::exception&) {
      ok = false;
    }
  }
  if (!ok) throw CLI::ValidationError("--patch", "expected three positive integers t,h,w");
  return PatchSize{v[0], v[1], v[2]};
}

std::vector<Generator> parse_generator_list(const std::vector<std::string>& names) {
  std::vector<Generator> out;
  for (const auto& n : names) {
    auto g = parse_generator(n);
    if (!g) throw CLI::ValidationError("--generators", "unknown generator: " + n);
    out.push_back(*g);
  }
  return out;
}

Emit parse_emit(const std::string& list) {
  const auto items = split_list(list);
  Emit e;
  e.stats = false;
  for (const auto& s : items) {
    if (s == "masks") e.masks = true;
    else if (s == "mvf") e.mvf = true;
    else if (s == "boxtrack") e.boxtrack = true;
    else if (s == "ppm") e.ppm = true;
    else if (s == "stats") e.stats = true;
    else if (s != "none") throw CLI::ValidationError("--emit", "unknown artifact: " + s);
  }
  return e;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Motion-guided token masking for video clips", "mgmask"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "mgmask 0.3.0");

  RunConfig cfg;
  std::string format = "auto";
  std::string generator;
  std::string generators = "random,mgm-dense";
  std::string patch;
  std::string emit;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::string boxes;

  std::vector<std::string> gen_names;
  for (auto g : kAllGenerators) gen_names.emplace_back(generator_name(g));

  auto common = [&](CLI::App* sub) {
    sub->add_option("inputs", cfg.inputs, "Input files or directories")->required();
    sub->add_option("-o,--out", out_dir, "Output directory")->capture_default_str();
    sub->add_option("--format", format, "Input format")
        ->check(CLI::IsMember({"auto", "rvc", "y4m", "mvf", "msk"}))
        ->capture_default_str();
    sub->add_option("--patch", patch, "Patch size t,h,w (default 2,16,16)");
    sub->add_option("--seed", seed, "Base seed (env MGMASK_SEED when absent)");
    sub->add_option("-j,--jobs", cfg.jobs, "Worker threads, 0 = all cores");
    sub->add_option("--emit", emit, "Artifacts to write: masks,mvf,boxtrack,ppm,stats or none");
  };
  auto radius = [&](CLI::App* sub) {
    sub->add_option("--search-radius", cfg.search_radius, "Block-matching radius in pixels")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
  };
  auto masking = [&](CLI::App* sub) {
    sub->add_option("--gamma", cfg.gamma, "Masking ratio in (0, 1]")->capture_default_str();
    sub->add_option("--velocity-cap", cfg.velocity_cap, "SMM velocity cap (tokens/slab)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sub->add_option("--jitter-cap", cfg.jitter_cap, "Box size jitter cap (tokens)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sub->add_flag("--estimate", cfg.estimate, "Estimate motion when no <stem>.mvf exists");
  };

  auto* estimate = app.add_subcommand("estimate", "Block motion vectors, one <stem>.mvf per clip");
  common(estimate);
  radius(estimate);

  auto* mask = app.add_subcommand("mask", "Generate MSK1 masks");
  common(mask);
  radius(mask);
  masking(mask);
  mask->add_option("-g,--generator", generator, "Mask generator")
      ->required()
      ->check(CLI::IsMember(gen_names));

  auto* saliency = app.add_subcommand("saliency", "Motion saliency score against box annotations");
  common(saliency);
  radius(saliency);
  saliency->add_option("--boxes", boxes, "Box annotation file, or directory of <stem>.boxes.json");

  auto* oracle = app.add_subcommand("oracle", "Temporal-copy reconstruction error per generator");
  common(oracle);
  radius(oracle);
  masking(oracle);
  oracle->add_option("--generators", generators, "Comma-separated generators to compare")
      ->capture_default_str();
  oracle->add_option("--quantile", cfg.quantile, "Coverage quantile q in [0, 1)")
      ->capture_default_str();

  auto* info = app.add_subcommand("info", "Print parsed headers");
  info->add_option("inputs", cfg.inputs, "Input files or directories")->required();
  info->add_option("--format", format, "Input format")
      ->check(CLI::IsMember({"auto", "rvc", "y4m", "mvf", "msk"}));
  info->add_option("--patch", patch, "Patch size t,h,w for MSK1");

  try {
    app.parse(argc, argv);
    cfg.format = *parse_format(format);
    if (!patch.empty()) cfg.patch = parse_patch(patch);
    if (!(cfg.gamma > 0.0 && cfg.gamma <= 1.0)) {
      throw CLI::ValidationError("--gamma", "must lie in (0, 1]");
    }
    if (!(cfg.quantile >= 0.0 && cfg.quantile < 1.0)) {
      throw CLI::ValidationError("--quantile", "must lie in [0, 1)");
    }
    if (seed) {
      cfg.seed = *seed;
    } else if (const char* env = std::getenv("MGMASK_SEED"); env && *env) {
      try {
        std::size_t used = 0;
        cfg.seed = std::stoull(env, &used, 0);
        if (env[used] != '\0') throw std::invalid_argument(env);
      } catch (const std::exception&) {
        throw CLI::ValidationError("MGMASK_SEED", std::string("not an unsigned integer: ") + env);
      }
    }
    if (!generator.empty()) cfg.generator = parse_generator(generator);
    cfg.generators = parse_generator_list(split_list(generators));
    if (oracle->parsed() && cfg.generators.empty()) {
      throw CLI::ValidationError("--generators", "at least one generator required");
    }
    if (!emit.empty()) parse_emit(emit);
    if (!boxes.empty()) cfg.boxes = boxes;
    cfg.out_dir = out_dir;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }

  try {
    if (info->parsed()) return cmd_info(cfg, std::cout);

    if (estimate->parsed()) {
      cfg.emit = emit.empty() ? Emit{.mvf = true} : parse_emit(emit);
    } else if (mask->parsed()) {
      cfg.emit = emit.empty() ? Emit{.masks = true, .boxtrack = true} : parse_emit(emit);
    } else {
      cfg.emit = emit.empty() ? Emit{} : parse_emit(emit);
    }
    std::filesystem::create_directories(cfg.out_dir);

    if (estimate->parsed()) return cmd_estimate(cfg);
    if (mask->parsed()) return cmd_mask(cfg);
    if (saliency->parsed()) return cmd_saliency(cfg);
    if (oracle->parsed()) return cmd_oracle(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("mgmask");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace mgmask::app
