#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <nlohmann/json.hpp>

#include "batch.hpp"
#include "mgmask/error.hpp"
#include "mgmask/json_io.hpp"
#include "mgmask/saliency.hpp"

namespace mgmask::app {
namespace {

using nlohmann::json;
using ItemFn = std::function<json(std::size_t, const fs::path&)>;

const std::vector<InputFormat> kClipFormats = {InputFormat::kRvc, InputFormat::kY4m};
const std::vector<InputFormat> kClipOrMotion = {InputFormat::kRvc, InputFormat::kY4m,
                                                InputFormat::kMvf};

std::vector<InputFormat> accepted(const RunConfig& cfg, const std::vector<InputFormat>& dflt) {
  if (cfg.format == InputFormat::kAuto) return dflt;
  return {cfg.format};
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json error_record(const fs::path& input, std::string_view code, const std::string& message) {
  return {{"input", input.generic_string()}, {"error", code}, {"message", message}};
}

json base_config(const RunConfig& cfg) {
  return {{"format", format_name(cfg.format)},
          {"patch", {cfg.patch.t, cfg.patch.h, cfg.patch.w}},
          {"search_radius", cfg.search_radius},
          {"seed", cfg.seed}};
}

json mask_config(const RunConfig& cfg) {
  json c = base_config(cfg);
  c["gamma"] = cfg.gamma;
  c["velocity_cap"] = cfg.velocity_cap;
  c["jitter_cap"] = cfg.jitter_cap;
  c["estimate"] = cfg.estimate;
  return c;
}

// Runs `fn` over every input on the worker pool and assembles the report in
// input order. Returns the process exit status.
int run_batch(const RunConfig& cfg, std::string_view command, json config,
              const std::vector<fs::path>& inputs, const ItemFn& fn,
              const std::function<void(json&, const std::vector<json>&)>& aggregate = {}) {
  std::vector<std::optional<json>> ok(inputs.size());
  std::vector<std::optional<json>> failed(inputs.size());
  parallel_for(inputs.size(), cfg.jobs, [&](std::size_t i) {
    try {
      ok[i] = fn(i, inputs[i]);
    } catch (const Error& e) {
      failed[i] = error_record(inputs[i], error_name(e.code()), e.what());
    } catch (const std::exception& e) {
      failed[i] = error_record(inputs[i], "Internal", e.what());
    }
  });

  json report = {{"version", kStatsVersion}, {"command", command}, {"config", std::move(config)}};
  std::vector<json> clips;
  json errors = json::array();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (ok[i]) clips.push_back(std::move(*ok[i]));
    if (failed[i]) {
      std::cerr << "error: " << inputs[i].generic_string() << ": "
                << (*failed[i])["message"].get<std::string>() << '\n';
      errors.push_back(std::move(*failed[i]));
    }
  }
  if (aggregate) aggregate(report, clips);
  report["clips"] = clips;
  report["errors"] = errors;

  if (cfg.emit.stats) {
    try {
      write_atomic(cfg.out_dir / kStatsFile, report.dump(2) + "\n");
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return errors.empty() ? 0 : 1;
}

std::string stem_of(const fs::path& p) { return p.stem().string(); }

MotionField estimate_for(const Clip& clip, int radius) {
  return estimate_mv(to_luma(clip), radius);
}

// Motion for an input: the input itself, its co-located .mvf, or (when allowed)
// estimated from the clip. `estimated` reports the last case.
std::optional<MotionField> find_motion(const LoadedInput& in, const fs::path& path,
                                       const RunConfig& cfg, bool allow_estimate,
                                       bool* estimated) {
  if (estimated) *estimated = false;
  if (in.motion) return in.motion;
  if (auto m = colocated_motion(path)) return m;
  if (allow_estimate && in.clip) {
    if (estimated) *estimated = true;
    return estimate_for(*in.clip, cfg.search_radius);
  }
  return std::nullopt;
}

GridSpec grid_for(const LoadedInput& in, const fs::path& path, PatchSize patch) {
  if (in.clip) return grid_from_clip(in.clip->frames(), in.clip->height(), in.clip->width(), patch);
  if (in.motion) {
    return grid_from_clip(in.motion->frames(), in.motion->pixel_height(),
                          in.motion->pixel_width(), patch);
  }
  throw Error(ErrorCode::kInvalidArgument, "expected a clip or motion field: " + path.string());
}

void write_overlays(const fs::path& dir, const std::string& stem, const Clip* clip,
                    const Mask3D& mask) {
  const GridSpec& spec = mask.spec();
  const std::uint32_t height = spec.height();
  const std::uint32_t width = spec.width();
  for (std::uint32_t t = 0; t < spec.frames(); ++t) {
    Clip img(1, height, width, 3);
    for (std::uint32_t r = 0; r < height; ++r) {
      for (std::uint32_t c = 0; c < width; ++c) {
        std::uint8_t px[3] = {128, 128, 128};
        if (clip) {
          for (std::uint32_t ch = 0; ch < 3; ++ch) {
            px[ch] = clip->at(t, r, c, clip->channels() == 3 ? ch : 0);
          }
        }
        if (mask.get(t / spec.patch.t, r / spec.patch.h, c / spec.patch.w)) {
          px[0] = static_cast<std::uint8_t>(px[0] / 2 + 128);
          px[1] = static_cast<std::uint8_t>(px[1] / 2);
          px[2] = static_cast<std::uint8_t>(px[2] / 2);
        }
        for (std::uint32_t ch = 0; ch < 3; ++ch) img.at(0, r, c, ch) = px[ch];
      }
    }
    char name[32];
    std::snprintf(name, sizeof(name), ".overlay.%03u.ppm", t);
    write_atomic(dir / (stem + name), write_ppm_frame(img, 0));
  }
}

fs::path boxes_path(const RunConfig& cfg, const fs::path& input) {
  const std::string file = stem_of(input) + ".boxes.json";
  if (!cfg.boxes) return input.parent_path() / file;
  const fs::path b(*cfg.boxes);
  std::error_code ec;
  return fs::is_directory(b, ec) ? b / file : b;
}

}  // namespace

int cmd_estimate(const RunConfig& cfg) {
  const auto inputs = collect_inputs(cfg.inputs, accepted(cfg, kClipFormats));
  return run_batch(cfg, "estimate", base_config(cfg), inputs, [&](std::size_t, const fs::path& p) {
    const auto in = load_input(p, cfg.format, cfg.patch);
    if (!in.clip) throw Error(ErrorCode::kInvalidArgument, "estimate expects a clip");
    const MotionField field = estimate_for(*in.clip, cfg.search_radius);
    const std::string stem = stem_of(p);
    json rec = {{"input", p.generic_string()},
                {"name", stem},
                {"frames", in.clip->frames()},
                {"height", in.clip->height()},
                {"width", in.clip->width()},
                {"mean_mv", mean_magnitude(field)},
                {"mvf", nullptr}};
    if (cfg.emit.mvf) {
      write_atomic(cfg.out_dir / (stem + ".mvf"), write_mvf(field));
      rec["mvf"] = stem + ".mvf";
    }
    return rec;
  });
}

int cmd_mask(const RunConfig& cfg) {
  const Generator g = cfg.generator.value_or(Generator::kRandom);
  json config = mask_config(cfg);
  config["generator"] = generator_name(g);
  const auto inputs = collect_inputs(cfg.inputs, accepted(cfg, kClipFormats));
  return run_batch(cfg, "mask", config, inputs, [&](std::size_t i, const fs::path& p) {
    const auto in = load_input(p, cfg.format, cfg.patch);
    const GridSpec spec = grid_for(in, p, cfg.patch);
    const std::string stem = stem_of(p);
    MaskParams params{cfg.gamma, cfg.velocity_cap, cfg.jitter_cap,
                      derive_clip_seed(cfg.seed, i)};

    std::optional<MotionGuide> guide;
    json motion_source = nullptr;
    if (needs_motion(g)) {
      bool estimated = false;
      auto motion = find_motion(in, p, cfg, cfg.estimate, &estimated);
      if (!motion) {
        throw Error(ErrorCode::kMissingMotion,
                    "no " + stem + ".mvf next to " + p.generic_string() + " (pass --estimate)");
      }
      guide = prepare_motion_guide(*motion, spec);
      motion_source = in.motion ? "input" : estimated ? "estimated" : "mvf";
      if (estimated && cfg.emit.mvf) write_atomic(cfg.out_dir / (stem + ".mvf"), write_mvf(*motion));
    }

    const MaskResult res = generate(g, spec, params, guide ? &*guide : nullptr);
    json outputs = json::array();
    if (cfg.emit.masks) {
      write_atomic(cfg.out_dir / (stem + ".msk"), write_msk(res.mask));
      outputs.push_back(stem + ".msk");
    }
    if (cfg.emit.boxtrack && !res.track.slabs.empty()) {
      write_atomic(cfg.out_dir / (stem + ".boxtrack.json"), boxtrack_to_json(res.track));
      outputs.push_back(stem + ".boxtrack.json");
    }
    if (cfg.emit.ppm) {
      write_overlays(cfg.out_dir, stem, in.clip ? &*in.clip : nullptr, res.mask);
      outputs.push_back(stem + ".overlay.*.ppm");
    }
    return json{{"input", p.generic_string()},
                {"name", stem},
                {"seed", params.seed},
                {"grid", {spec.slabs, spec.rows, spec.cols}},
                {"motion", motion_source},
                {"target_masked", res.stats.target_masked},
                {"masked", res.mask.popcount()},
                {"per_slab_quota", res.stats.per_slab_quota},
                {"correction_residue", res.stats.correction_residue},
                {"cells_added", res.stats.cells_added},
                {"cells_removed", res.stats.cells_removed},
                {"block_clamped", res.stats.block_clamped},
                {"outputs", outputs}};
  });
}

int cmd_saliency(const RunConfig& cfg) {
  json config = base_config(cfg);
  config["boxes"] = cfg.boxes ? json(*cfg.boxes) : json(nullptr);
  const auto inputs = collect_inputs(cfg.inputs, accepted(cfg, kClipOrMotion));
  auto item = [&](std::size_t, const fs::path& p) {
    const fs::path bpath = boxes_path(cfg, p);
    std::error_code ec;
    if (!fs::is_regular_file(bpath, ec)) {
      throw Error(ErrorCode::kMissingAnnotation, "no box annotation at " + bpath.generic_string());
    }
    const auto text = read_file(bpath);
    const BoxAnnotation boxes =
        parse_box_annotation(std::string_view(reinterpret_cast<const char*>(text.data()), text.size()));
    const auto in = load_input(p, cfg.format, cfg.patch);
    const auto motion = find_motion(in, p, cfg, true, nullptr);
    if (!motion) throw Error(ErrorCode::kMissingMotion, "no motion for " + p.generic_string());
    const double score = saliency_score(*motion, boxes);
    return json{{"input", p.generic_string()},
                {"name", stem_of(p)},
                {"boxes", bpath.filename().string()},
                {"score", finite_or_null(score)},
                {"mean_mv", mean_magnitude(*motion)}};
  };
  auto aggregate = [](json& report, const std::vector<json>& clips) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& c : clips) {
      if (c["score"].is_number()) {
        sum += c["score"].get<double>();
        ++n;
      }
    }
    report["mean_score"] = n ? json(sum / static_cast<double>(n)) : json(nullptr);
  };
  return run_batch(cfg, "saliency", config, inputs, item, aggregate);
}

int cmd_oracle(const RunConfig& cfg) {
  json config = mask_config(cfg);
  json names = json::array();
  bool any_motion = false;
  for (auto g : cfg.generators) {
    names.push_back(generator_name(g));
    any_motion = any_motion || needs_motion(g);
  }
  config["generators"] = names;
  config["quantile"] = cfg.quantile;
  const auto inputs = collect_inputs(cfg.inputs, accepted(cfg, kClipFormats));

  auto item = [&](std::size_t i, const fs::path& p) {
    const auto in = load_input(p, cfg.format, cfg.patch);
    if (!in.clip) throw Error(ErrorCode::kInvalidArgument, "oracle expects a clip");
    const GridSpec spec = grid_for(in, p, cfg.patch);
    const auto motion = find_motion(in, p, cfg, cfg.estimate, nullptr);
    if (any_motion && !motion) {
      throw Error(ErrorCode::kMissingMotion,
                  "no " + stem_of(p) + ".mvf next to " + p.generic_string() + " (pass --estimate)");
    }
    std::optional<MotionGuide> guide;
    if (motion) guide = prepare_motion_guide(*motion, spec);

    const MaskParams params{cfg.gamma, cfg.velocity_cap, cfg.jitter_cap,
                            derive_clip_seed(cfg.seed, i)};
    json results = json::object();
    for (auto g : cfg.generators) {
      const MaskResult res = generate(g, spec, params, guide ? &*guide : nullptr);
      const Reconstruction rec = temporal_copy_reconstruct(*in.clip, res.mask, spec);
      json r = {{"mse", rec.mse},
                {"masked_samples", rec.masked_samples},
                {"mean_filled_tokens", rec.mean_filled_tokens},
                {"fallback_fill", rec.fallback_fill}};
      if (guide) r["coverage"] = mask_motion_coverage(res.mask, *guide, cfg.quantile);
      results[std::string(generator_name(g))] = r;
    }
    return json{{"input", p.generic_string()},
                {"name", stem_of(p)},
                {"seed", params.seed},
                {"results", results}};
  };

  auto aggregate = [&](json& report, const std::vector<json>& clips) {
    json agg = json::object();
    for (auto g : cfg.generators) {
      const std::string name(generator_name(g));
      double mse = 0.0, cov = 0.0;
      std::size_t n_cov = 0;
      for (const auto& c : clips) {
        const auto& r = c["results"][name];
        mse += r["mse"].get<double>();
        if (r.contains("coverage")) {
          cov += r["coverage"].get<double>();
          ++n_cov;
        }
      }
      const double n = static_cast<double>(clips.size());
      agg[name] = {{"clips", clips.size()},
                   {"mean_mse", clips.empty() ? json(nullptr) : json(mse / n)},
                   {"mean_coverage",
                    n_cov ? json(cov / static_cast<double>(n_cov)) : json(nullptr)}};
    }
    report["aggregate"] = agg;
  };
  return run_batch(cfg, "oracle", config, inputs, item, aggregate);
}

int cmd_info(const RunConfig& cfg, std::ostream& out) {
  const auto inputs = collect_inputs(
      cfg.inputs, accepted(cfg, {InputFormat::kRvc, InputFormat::kY4m, InputFormat::kMvf,
                                 InputFormat::kMsk}));
  int status = 0;
  for (const auto& p : inputs) {
    try {
      const auto in = load_input(p, cfg.format, cfg.patch);
      json j = {{"input", p.generic_string()}, {"format", format_name(in.format)}};
      if (in.clip) {
        j["frames"] = in.clip->frames();
        j["height"] = in.clip->height();
        j["width"] = in.clip->width();
        j["channels"] = in.clip->channels();
      } else if (in.motion) {
        j["frames"] = in.motion->frames();
        j["block_rows"] = in.motion->block_rows();
        j["block_cols"] = in.motion->block_cols();
      } else if (in.mask) {
        const GridSpec& s = in.mask->spec();
        j["grid"] = {s.slabs, s.rows, s.cols};
        j["target_masked"] = in.mask->target_masked();
      }
      out << j.dump() << '\n';
    } catch (const Error& e) {
      std::cerr << "error: " << p.generic_string() << ": " << e.what() << '\n';
      status = 1;
    }
  }
  return status;
}

}  // namespace mgmask::app
