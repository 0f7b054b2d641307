// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "app.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "config.hpp"
#include "dualcam/capture.hpp"
#include "dualcam/image_io.hpp"
#include "dualcam/kernel_check.hpp"
#include "dualcam/metrics.hpp"
#include "dualcam/powermodel.hpp"
#include "dualcam/reconstruct.hpp"
#include "dualcam/repair.hpp"
#include "dualcam/rng.hpp"
#include "dualcam/wire.hpp"
#include "manifest.hpp"
#include "stream_dir.hpp"
#include "udp.hpp"

namespace dualcam::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::shared_ptr<spdlog::logger> logger() {
  static auto log = [] {
    auto l = spdlog::stderr_color_st("dualcam");
    l->set_pattern("[%l] %v");
    const char* env = std::getenv("NEURICAM_LOG");
    l->set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
    return l;
  }();
  return log;
}

// Flags shared by all subcommands; unset optionals leave the config alone.
struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> parallel;
  std::optional<int> key_interval;
  std::optional<double> per;
  std::optional<double> ber;
  std::optional<std::string> scene;
  std::optional<std::size_t> frames;
  std::optional<double> pan_px;
  std::optional<std::string> decoder;
  std::optional<std::string> calib_path;
  std::optional<double> noise_sigma;

  RunConfig resolve() const {
    RunConfig c = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (seed) c.seed = *seed;
    if (parallel) c.parallel = *parallel;
    if (key_interval) c.capture.key_interval = *key_interval;
    if (per) c.channel.loss_prob = *per;
    if (ber) c.channel.bit_error_prob = *ber;
    if (scene) c.scene = *scene;
    if (frames) c.frames = *frames;
    if (pan_px) c.pan_px = *pan_px;
    if (decoder) c.decoder = *decoder;
    if (calib_path) c.calib = load_calibration(*calib_path);
    if (noise_sigma) {
      c.capture.noise.enabled = *noise_sigma > 0.0;
      c.capture.noise.read_noise_sigma = *noise_sigma;
    }
    if (c.channel.loss_prob < 0.0 || c.channel.loss_prob > 1.0 || c.channel.bit_error_prob < 0.0 ||
        c.channel.bit_error_prob > 1.0)
      fail(ErrorKind::kConfig, "channel probabilities must lie in [0, 1]");
    if (c.parallel < 1) fail(ErrorKind::kConfig, "--parallel must be at least 1");
    c.propagate_seed();
    return c;
  }
};

std::string input_digest(const fs::path& dir) {
  const std::string s = digest_tree(dir).dump();
  return hex64(fnv1a(s.data(), s.size()));
}

// ---------------------------------------------------------------------------
// Stages

ordered_json stage_simulate(const RunConfig& cfg, const std::optional<fs::path>& gt_dir,
                            const fs::path& out) {
  CaptureConfig cap = cfg.capture;
  std::vector<Frame> gt;
  if (gt_dir) {
    GroundTruth g = read_ground_truth(*gt_dir);
    cap.lr_fps = g.fps;
    const Resolution r = g.frames.front().resolution();
    for (const Frame& f : g.frames)
      if (f.resolution() != r)
        fail(ErrorKind::kData, fmt::format("ground-truth frame {} is {}x{}, expected {}x{}",
                                           f.frame_index, f.width(), f.height(), r.width, r.height));
    if (r.width % cap.scale != 0 || r.height % cap.scale != 0)
      fail(ErrorKind::kData, fmt::format("ground-truth size {}x{} is not divisible by scale {}",
                                         r.width, r.height, cap.scale));
    cap.hr_res = r;
    cap.lr_res = {r.width / cap.scale, r.height / cap.scale};
    gt = std::move(g.frames);
  } else {
    gt = synthesize_scene(parse_scene_kind(cfg.scene), cfg.frames, cap.hr_res, cfg.pan_px);
  }
  cap.validate();
  logger()->info("simulate: {} ground-truth frames at {}x{}, K={}", gt.size(), cap.hr_res.width,
                 cap.hr_res.height, cap.key_interval);
  const DualStream s = sample_keyframes(gt, cap, cfg.parallel);
  write_stream_dir(out, s);
  if (!gt_dir) write_ground_truth(out / "gt", gt, cap.lr_fps);
  return {{"lr_frames", s.lr_frames.size()}, {"key_frames", s.key_frames.size()}};
}

ordered_json stage_transmit(const RunConfig& cfg, const fs::path& stream_dir, const fs::path& out,
                            std::optional<std::uint16_t> udp_port) {
  const DualStream s = read_stream_dir(stream_dir);
  std::vector<EncodedPacket> lr, key;
  for (const Frame& f : s.lr_frames) {
    const auto p = encode_all(packetize(f, false));
    lr.insert(lr.end(), p.begin(), p.end());
  }
  for (const Frame& f : s.key_frames) {
    const auto p = encode_all(packetize(f, true));
    key.insert(key.end(), p.begin(), p.end());
  }
  ChannelModel lr_ch = cfg.channel, key_ch = cfg.channel;
  lr_ch.seed = mix_seed(cfg.channel.seed, 0);
  key_ch.seed = mix_seed(cfg.channel.seed, 1);
  const auto lr_rx = channel_transmit(lr, lr_ch);
  const auto key_rx = channel_transmit(key, key_ch);
  logger()->info("transmit: LR {} -> {} packets, key {} -> {} packets", lr.size(), lr_rx.size(),
                 key.size(), key_rx.size());

  fs::create_directories(out);
  write_stream_file(out / "lr.ncs", lr_rx);
  write_stream_file(out / "key.ncs", key_rx);
  const ordered_json link = {{"capture", capture_to_json(s.config)},
                             {"lr_frames", s.lr_frames.size()}};
  write_text(out / "link.json", link.dump(2) + "\n");
  if (udp_port) {
    std::vector<EncodedPacket> all = lr_rx;
    all.insert(all.end(), key_rx.begin(), key_rx.end());
    udp_send(*udp_port, all, 20);
    logger()->info("transmit: sent {} datagrams to 127.0.0.1:{}", all.size(), *udp_port);
  }
  return {{"input_digest", input_digest(stream_dir)},
          {"lr_packets_sent", lr.size()},
          {"lr_packets_delivered", lr_rx.size()},
          {"key_packets_sent", key.size()},
          {"key_packets_delivered", key_rx.size()}};
}

struct Received {
  DualStream damaged;
  StreamLosses losses;
  std::size_t crc_failures = 0;
  std::size_t unknown_timestamps = 0;
};

Received reassemble_stream(const CaptureConfig& cap, std::size_t n,
                           std::span<const EncodedPacket> lr_packets,
                           std::span<const EncodedPacket> key_packets) {
  Received r;
  r.damaged.config = cap;
  auto rebuild = [&](std::span<const EncodedPacket> packets, const FrameLayout& layout,
                     StreamKind kind, std::size_t step, std::vector<Frame>& frames,
                     std::map<std::uint64_t, LossMap>& losses) {
    const FrameGroups groups = group_by_frame(packets);
    r.crc_failures += groups.undecodable;
    for (std::size_t t = 0; t < n; t += step) {
      const auto it = groups.frames.find(static_cast<std::uint32_t>(t));
      const std::vector<EncodedPacket> none;
      const auto& pk = it == groups.frames.end() ? none : it->second;
      Reassembled ra = reassemble(pk, layout, static_cast<std::uint32_t>(t));
      r.crc_failures += ra.crc_failures;
      Frame f = std::move(ra.frame);
      f.stream = kind;
      f.frame_index = t;
      if (!ra.timestamp_known) {
        f.timestamp_ms = nominal_timestamp(t, cap.lr_fps);
        ++r.unknown_timestamps;
        logger()->warn("{} frame {}: terminal packet lost, using nominal timestamp {} ms",
                       kind == StreamKind::kLr ? "LR" : "key", t, f.timestamp_ms);
      } else {
        f.timestamp_ms = ra.frame.timestamp_ms;
      }
      if (!ra.losses.empty()) {
        losses[t] = ra.losses;
        logger()->info("{} frame {}: {} lines lost", kind == StreamKind::kLr ? "LR" : "key", t,
                       lost_line_count(ra.losses));
      }
      frames.push_back(std::move(f));
    }
  };
  rebuild(lr_packets, {cap.lr_res, ColorSpace::kGray8}, StreamKind::kLr, 1, r.damaged.lr_frames,
          r.losses.lr);
  rebuild(key_packets, {cap.hr_res, ColorSpace::kSrgb8}, StreamKind::kKey, cap.key_interval,
          r.damaged.key_frames, r.losses.key);
  return r;
}

DualStream repair_stream(const DualStream& s, const StreamLosses& losses) {
  DualStream out = s;
  auto fix = [](std::vector<Frame>& frames, const std::map<std::uint64_t, LossMap>& m) {
    for (Frame& f : frames) {
      const auto it = m.find(f.frame_index);
      if (it == m.end()) continue;
      RepairResult rr = repair_lost_lines(f, it->second);
      if (rr.fully_lost) logger()->warn("frame {} was lost entirely", f.frame_index);
      rr.frame.copy_meta_from(f);
      f = std::move(rr.frame);
    }
  };
  fix(out.lr_frames, losses.lr);
  fix(out.key_frames, losses.key);
  return out;
}

int total_lost_lines(const std::map<std::uint64_t, LossMap>& m) {
  int n = 0;
  for (const auto& [i, lm] : m) n += lost_line_count(lm);
  return n;
}

ordered_json stage_receive(const fs::path& link_dir, const fs::path& out, bool do_repair,
                           bool keep_damaged, std::optional<std::uint16_t> udp_port,
                           int udp_timeout_ms) {
  const fs::path link_path = link_dir / "link.json";
  require(fs::exists(link_path), "missing link description " + link_path.string(),
          ErrorKind::kData);
  ordered_json link;
  try {
    link = ordered_json::parse(read_text(link_path));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kData, link_path.string() + ": " + e.what());
  }
  const CaptureConfig cap = capture_from_json(link.at("capture"));
  const auto n = link.at("lr_frames").get<std::size_t>();

  std::vector<EncodedPacket> lr, key;
  if (udp_port) {
    UdpReceiver rx(*udp_port);
    logger()->info("receive: listening on 127.0.0.1:{}", rx.port());
    for (auto& p : rx.receive_all(udp_timeout_ms)) {
      (p.empty() || p[0] == static_cast<std::uint8_t>(StreamId::kLr) ? lr : key)
          .push_back(std::move(p));
    }
  } else {
    lr = read_stream_file(link_dir / "lr.ncs");
    key = read_stream_file(link_dir / "key.ncs");
  }
  Received r = reassemble_stream(cap, n, lr, key);
  fs::create_directories(out);
  if (keep_damaged) write_stream_dir(out / "damaged", r.damaged);
  write_stream_dir(out, do_repair ? repair_stream(r.damaged, r.losses) : r.damaged);
  write_lossmaps(out / "lossmaps.json", r.losses);
  return {{"repaired", do_repair},
          {"lr_packets_received", lr.size()},
          {"key_packets_received", key.size()},
          {"crc_failures", r.crc_failures},
          {"unknown_timestamps", r.unknown_timestamps},
          {"lr_lost_lines", total_lost_lines(r.losses.lr)},
          {"key_lost_lines", total_lost_lines(r.losses.key)}};
}

ordered_json stage_repair(const fs::path& in, const fs::path& out) {
  const DualStream s = read_stream_dir(in);
  const StreamLosses losses = read_lossmaps(in / "lossmaps.json");
  write_stream_dir(out, repair_stream(s, losses));
  write_lossmaps(out / "lossmaps.json", losses);
  return {{"input_digest", input_digest(in)},
          {"lr_lost_lines", total_lost_lines(losses.lr)},
          {"key_lost_lines", total_lost_lines(losses.key)}};
}

ordered_json stage_reconstruct(const RunConfig& cfg, const fs::path& stream_dir,
                               const fs::path& out) {
  const DualStream s = read_stream_dir(stream_dir);
  std::vector<Frame> frames;
  const std::string ext = "external:";
  if (cfg.decoder.rfind(ext, 0) == 0) {
    try {
      frames = import_external_reconstruction(cfg.decoder.substr(ext.size()), s.lr_frames.size(),
                                              s.config.hr_res);
    } catch (const Error& e) {
      fail(ErrorKind::kDecoder, fmt::format("decoder '{}' output rejected: {}", cfg.decoder, e.what()));
    }
  } else {
    const auto decoder = make_decoder(cfg.decoder);
    ReconstructOptions opt;
    opt.calib = cfg.calib;
    opt.parallel = cfg.parallel;
    opt.sync_tolerance_ms = cfg.sync_tolerance_ms;
    frames = reconstruct_sequence(s, *decoder, opt);
  }
  logger()->info("reconstruct: {} frames with decoder {}", frames.size(), cfg.decoder);
  write_frame_dir(out, frames);
  return {{"input_digest", input_digest(stream_dir)},
          {"decoder", cfg.decoder},
          {"frames", frames.size()}};
}

ordered_json stage_evaluate(const fs::path& pred_dir, const fs::path& gt_dir, int key_interval,
                            const std::vector<std::string>& channels, const fs::path& out) {
  const auto pred = read_frame_dir(pred_dir);
  const auto gt = read_frame_dir(gt_dir);
  if (pred.size() != gt.size())
    fail(ErrorKind::kData, fmt::format("evaluate: {} predicted frames but {} ground-truth frames",
                                       pred.size(), gt.size()));
  fs::create_directories(out);
  ordered_json summary = ordered_json::object();
  summary["y_definition"] = kYDefinition;
  for (const auto& name : channels) {
    const ChannelSet cs = parse_channel_set(name);
    const SequenceReport r = evaluate_sequence(pred, gt, key_interval, cs);
    write_text(out / fmt::format("report_{}.json", to_string(cs)), report_to_json(r) + "\n");
    write_text(out / fmt::format("report_{}.csv", to_string(cs)), report_to_csv(r));
    summary[to_string(cs)] = {
        {"mean_psnr_db", std::isnan(r.mean_psnr) ? ordered_json() : ordered_json(r.mean_psnr)},
        {"mean_ssim", std::isnan(r.mean_ssim) ? ordered_json() : ordered_json(r.mean_ssim)},
        {"evaluated_frames", r.frames.size()},
        {"excluded_key_frames", r.excluded_key_frames},
        {"infinite_psnr_frames", r.infinite_psnr_frames}};
    std::cout << fmt::format("{:>4}: mean PSNR {:.4f} dB, mean SSIM {:.6f} over {} frames\n",
                             to_string(cs), r.mean_psnr, r.mean_ssim, r.frames.size());
  }
  write_text(out / "summary.json", summary.dump(2) + "\n");
  return {{"pred_digest", input_digest(pred_dir)},
          {"gt_digest", input_digest(gt_dir)},
          {"summary", summary}};
}

// ---------------------------------------------------------------------------

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  sub->add_option("--seed", o.seed, "Master seed for every stochastic stage");
  sub->add_option("--parallel", o.parallel, "Worker threads (results are identical)");
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig:
    case ErrorKind::kDegenerate: return kExitConfig;
    case ErrorKind::kInvalidInput:
    case ErrorKind::kData: return kExitData;
    case ErrorKind::kDesync: return kExitDesync;
    case ErrorKind::kDecoder: return kExitDecoder;
  }
  return kExitFailure;
}

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Dual-mode camera simulator and protocol toolkit", "dualcam"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Overrides o;
  int status = kExitOk;

  // simulate
  auto* sim = app.add_subcommand("simulate", "Capture LR and key streams from ground truth");
  std::optional<std::string> sim_gt;
  std::string sim_out;
  add_common(sim, o);
  sim->add_option("--gt", sim_gt, "Ground-truth PNG directory (default: synthetic scene)");
  sim->add_option("--scene", o.scene, "Synthetic scene: static | panning");
  sim->add_option("--frames", o.frames, "Synthetic scene length");
  sim->add_option("--pan-px", o.pan_px, "Panning speed in pixels per frame");
  sim->add_option("--key-interval,-K", o.key_interval, "Key-frame interval");
  sim->add_option("--noise-sigma", o.noise_sigma, "Gaussian read noise in gray levels");
  sim->add_option("--out,-o", sim_out, "Output stream directory")->required();
  sim->callback([&] {
    const RunConfig cfg = o.resolve();
    auto extra = stage_simulate(cfg, sim_gt ? std::optional<fs::path>(*sim_gt) : std::nullopt, sim_out);
    if (sim_gt) extra["gt_digest"] = input_digest(*sim_gt);
    write_manifest(sim_out, "simulate", cfg.seed, cfg.to_json(), extra);
  });

  // transmit
  auto* tx = app.add_subcommand("transmit", "Packetize a stream and pass it through the channel");
  std::string tx_in, tx_out;
  std::optional<std::uint16_t> tx_udp;
  add_common(tx, o);
  tx->add_option("--stream", tx_in, "Stream directory")->required()->check(CLI::ExistingDirectory);
  tx->add_option("--per", o.per, "Packet loss probability");
  tx->add_option("--ber", o.ber, "Probability of one flipped bit per delivered packet");
  tx->add_option("--udp", tx_udp, "Also send the delivered packets to 127.0.0.1:PORT");
  tx->add_option("--out,-o", tx_out, "Output link directory")->required();
  tx->callback([&] {
    const RunConfig cfg = o.resolve();
    const auto extra = stage_transmit(cfg, tx_in, tx_out, tx_udp);
    write_manifest(tx_out, "transmit", cfg.seed, cfg.to_json(), extra);
  });

  // receive
  auto* rx = app.add_subcommand("receive", "Reassemble and repair a transmitted stream");
  std::string rx_link, rx_out;
  bool rx_no_repair = false, rx_keep = false;
  std::optional<std::uint16_t> rx_udp;
  int rx_timeout = 2000;
  add_common(rx, o);
  rx->add_option("--link", rx_link, "Link directory (link.json, and .ncs files unless --udp)")
      ->required()
      ->check(CLI::ExistingDirectory);
  rx->add_option("--udp", rx_udp, "Receive datagrams on 127.0.0.1:PORT instead of .ncs files");
  rx->add_option("--udp-timeout-ms", rx_timeout, "Idle timeout for --udp");
  rx->add_flag("--no-repair", rx_no_repair, "Write frames with lost lines zero-filled");
  rx->add_flag("--keep-damaged", rx_keep, "Also write the unrepaired stream to damaged/");
  rx->add_option("--out,-o", rx_out, "Output stream directory")->required();
  rx->callback([&] {
    const RunConfig cfg = o.resolve();
    const auto extra = stage_receive(rx_link, rx_out, !rx_no_repair, rx_keep, rx_udp, rx_timeout);
    write_manifest(rx_out, "receive", cfg.seed, cfg.to_json(), extra);
  });

  // repair
  auto* rp = app.add_subcommand("repair", "Repair lost lines listed in lossmaps.json");
  std::string rp_in, rp_out;
  add_common(rp, o);
  rp->add_option("--stream", rp_in, "Damaged stream directory")->required()->check(CLI::ExistingDirectory);
  rp->add_option("--out,-o", rp_out, "Output stream directory")->required();
  rp->callback([&] {
    const RunConfig cfg = o.resolve();
    const auto extra = stage_repair(rp_in, rp_out);
    write_manifest(rp_out, "repair", cfg.seed, cfg.to_json(), extra);
  });

  // reconstruct
  auto* rc = app.add_subcommand("reconstruct", "Decode HR colour video from a stream");
  std::string rc_in, rc_out;
  add_common(rc, o);
  rc->add_option("--stream", rc_in, "Stream directory")->required()->check(CLI::ExistingDirectory);
  rc->add_option("--decoder", o.decoder, "baseline | identity | external:<dir>");
  rc->add_option("--calib", o.calib_path, "Calibration JSON (matrix or 4 point pairs)")
      ->check(CLI::ExistingFile);
  rc->add_option("--out,-o", rc_out, "Output frame directory")->required();
  rc->callback([&] {
    const RunConfig cfg = o.resolve();
    const auto extra = stage_reconstruct(cfg, rc_in, rc_out);
    write_manifest(rc_out, "reconstruct", cfg.seed, cfg.to_json(), extra);
  });

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "PSNR/SSIM report against ground truth");
  std::string ev_pred, ev_gt, ev_out;
  std::vector<std::string> ev_channels{"y", "ab", "rgb"};
  add_common(ev, o);
  ev->add_option("--pred", ev_pred, "Reconstructed frame directory")->required()->check(CLI::ExistingDirectory);
  ev->add_option("--gt", ev_gt, "Ground-truth frame directory")->required()->check(CLI::ExistingDirectory);
  ev->add_option("--key-interval,-K", o.key_interval, "Key indices t % K == 0 are excluded");
  ev->add_option("--channels", ev_channels, "Any of y, ab, rgb")->delimiter(',');
  ev->add_option("--out,-o", ev_out, "Report directory")->required();
  ev->callback([&] {
    const RunConfig cfg = o.resolve();
    const auto extra = stage_evaluate(ev_pred, ev_gt, cfg.capture.key_interval, ev_channels, ev_out);
    write_manifest(ev_out, "evaluate", cfg.seed, cfg.to_json(), extra);
  });

  // power-report
  auto* pw = app.add_subcommand("power-report", "Power and bandwidth arithmetic");
  std::optional<std::string> pw_profile, pw_out;
  std::string pw_format = "markdown";
  pw->add_option("--profile", pw_profile, "JSON overrides for the component table")->check(CLI::ExistingFile);
  pw->add_option("--format", pw_format, "markdown | json")
      ->check(CLI::IsMember({"markdown", "json"}));
  pw->add_option("--out,-o", pw_out, "Write the report to a file instead of stdout");
  pw->callback([&] {
    const SystemProfile p =
        pw_profile ? SystemProfile::from_json(read_text(*pw_profile)) : SystemProfile::defaults();
    const std::string text = pw_format == "json" ? power_report_json(p) : power_report_markdown(p);
    if (pw_out) {
      write_text(*pw_out, text);
    } else {
      std::cout << text;
    }
  });

  // kernel-check
  auto* kc = app.add_subcommand("kernel-check", "Run the reference-kernel property suite");
  std::uint64_t kc_seed = 0;
  std::optional<std::string> kc_out;
  kc->add_option("--seed", kc_seed, "Seed for the random instances");
  kc->add_option("--out,-o", kc_out, "Write results as JSON");
  kc->callback([&] {
    const auto results = run_kernel_checks(kc_seed);
    ordered_json j = ordered_json::array();
    for (const auto& r : results) {
      std::cout << fmt::format("{} {}{}\n", r.passed ? "PASS" : "FAIL", r.name,
                               r.detail.empty() ? "" : " (" + r.detail + ")");
      j.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      if (!r.passed) status = kExitFailure;
    }
    if (kc_out) write_text(*kc_out, j.dump(2) + "\n");
  });

  // end-to-end
  auto* e2e = app.add_subcommand("end-to-end", "simulate, transmit, receive, reconstruct, evaluate");
  std::optional<std::string> e2e_gt;
  std::string e2e_out;
  add_common(e2e, o);
  e2e->add_option("--gt", e2e_gt, "Ground-truth PNG directory (default: synthetic scene)");
  e2e->add_option("--scene", o.scene, "Synthetic scene: static | panning");
  e2e->add_option("--frames", o.frames, "Synthetic scene length");
  e2e->add_option("--pan-px", o.pan_px, "Panning speed in pixels per frame");
  e2e->add_option("--key-interval,-K", o.key_interval, "Key-frame interval");
  e2e->add_option("--noise-sigma", o.noise_sigma, "Gaussian read noise in gray levels");
  e2e->add_option("--per", o.per, "Packet loss probability");
  e2e->add_option("--ber", o.ber, "Probability of one flipped bit per delivered packet");
  e2e->add_option("--decoder", o.decoder, "baseline | identity | external:<dir>");
  e2e->add_option("--calib", o.calib_path, "Calibration JSON")->check(CLI::ExistingFile);
  e2e->add_option("--out,-o", e2e_out, "Output artifact tree")->required();
  e2e->callback([&] {
    const RunConfig cfg = o.resolve();
    const fs::path root = e2e_out;
    const auto gt_in = e2e_gt ? std::optional<fs::path>(*e2e_gt) : std::nullopt;
    ordered_json stages;
    stages["simulate"] = stage_simulate(cfg, gt_in, root / "capture");
    stages["transmit"] = stage_transmit(cfg, root / "capture", root / "link", std::nullopt);
    stages["receive"] = stage_receive(root / "link", root / "received", true, false, std::nullopt, 0);
    stages["reconstruct"] = stage_reconstruct(cfg, root / "received", root / "recon");
    const fs::path gt_dir = gt_in ? *gt_in : root / "capture" / "gt";
    stages["evaluate"] = stage_evaluate(root / "recon", gt_dir, cfg.capture.key_interval,
                                        {"y", "ab", "rgb"}, root / "eval");
    write_manifest(root, "end-to-end", cfg.seed, cfg.to_json(), {{"stages", stages}});
  });

  std::vector<std::string> argv{"dualcam"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::vector<char*> ptrs;
  for (auto& a : argv) ptrs.push_back(a.data());
  try {
    app.parse(static_cast<int>(ptrs.size()), ptrs.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return status;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args);
}

}  // namespace dualcam::cli
