// audio_io.cc

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

#include "childaug/audio_io.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "childaug/error.h"
#include "childaug/log.h"

namespace childaug {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t get_u16(const unsigned char *p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const unsigned char *p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<unsigned char> &out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xFF));
  out.push_back(static_cast<unsigned char>(v >> 8));
}

void put_u32(std::vector<unsigned char> &out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i)
    out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFF));
}

void put_tag(std::vector<unsigned char> &out, const char *tag) {
  out.insert(out.end(), tag, tag + 4);
}

std::vector<unsigned char> wav_header(std::uint16_t format, int channels,
                                      int sample_rate, int bits,
                                      std::uint32_t data_bytes) {
  std::vector<unsigned char> out;
  out.reserve(44 + data_bytes);
  const std::uint32_t block_align = static_cast<std::uint32_t>(channels) *
                                    static_cast<std::uint32_t>(bits / 8);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, format);
  put_u16(out, static_cast<std::uint16_t>(channels));
  put_u32(out, static_cast<std::uint32_t>(sample_rate));
  put_u32(out, static_cast<std::uint32_t>(sample_rate) * block_align);
  put_u16(out, static_cast<std::uint16_t>(block_align));
  put_u16(out, static_cast<std::uint16_t>(bits));
  put_tag(out, "data");
  put_u32(out, data_bytes);
  return out;
}

}  // namespace

WindowType parse_window(std::string_view name) {
  if (name == "hann") return WindowType::kHann;
  if (name == "hamming") return WindowType::kHamming;
  if (name == "rect" || name == "rectangular") return WindowType::kRect;
  throw ConfigError("unknown window '" + std::string(name) + "'");
}

const char *window_name(WindowType w) {
  switch (w) {
    case WindowType::kHann: return "hann";
    case WindowType::kHamming: return "hamming";
    case WindowType::kRect: return "rect";
  }
  return "?";
}

std::vector<double> make_window(WindowType type, std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (type == WindowType::kRect || n == 0) return w;
  const double a0 = type == WindowType::kHann ? 0.5 : 0.54;
  for (std::size_t i = 0; i < n; ++i)
    w[i] = a0 - (1.0 - a0) * std::cos(2.0 * M_PI * static_cast<double>(i) /
                                      static_cast<double>(n));
  return w;
}

void FrameSpec::validate() const {
  if (!(frame_len_ms > 0.0) || !(hop_ms > 0.0) || hop_ms > frame_len_ms)
    throw ConfigError("frame spec requires 0 < hop_ms <= frame_len_ms (got " +
                      std::to_string(hop_ms) + " / " +
                      std::to_string(frame_len_ms) + ")");
}

std::size_t FrameSpec::frame_length(int sample_rate_hz) const {
  return static_cast<std::size_t>(
      std::lround(frame_len_ms * sample_rate_hz / 1000.0));
}

std::size_t FrameSpec::hop_length(int sample_rate_hz) const {
  return static_cast<std::size_t>(
      std::lround(hop_ms * sample_rate_hz / 1000.0));
}

Waveform read_wav_bytes(std::span<const unsigned char> bytes, WavInfo *info) {
  if (bytes.size() < 12) {
    // A RIFF prefix that stops early is a cut-off file, anything else is not
    // a WAV at all.
    const std::size_t n = std::min<std::size_t>(bytes.size(), 4);
    if (n > 0 && std::memcmp(bytes.data(), "RIFF", n) == 0)
      throw IoError("truncated WAV header");
    throw FormatError("not a RIFF/WAVE file");
  }
  if (std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw FormatError("not a RIFF/WAVE file");

  std::size_t pos = 12;
  bool have_fmt = false;
  std::uint16_t format = 0;
  int channels = 0, sample_rate = 0, bits = 0;
  const unsigned char *data = nullptr;
  std::size_t data_len = 0;

  while (pos + 8 <= bytes.size()) {
    const unsigned char *chunk = bytes.data() + pos;
    const std::uint32_t len = get_u32(chunk + 4);
    const std::size_t body = pos + 8;
    const bool is_data = std::memcmp(chunk, "data", 4) == 0;
    if (body + len > bytes.size()) {
      if (is_data) throw IoError("truncated WAV data chunk");
      throw IoError("truncated WAV chunk");
    }
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (len < 16) throw FormatError("fmt chunk too short");
      const unsigned char *f = bytes.data() + body;
      format = get_u16(f);
      channels = get_u16(f + 2);
      sample_rate = static_cast<int>(get_u32(f + 4));
      bits = get_u16(f + 14);
      if (format == kFormatExtensible) {
        if (len < 26) throw FormatError("extensible fmt chunk too short");
        format = get_u16(f + 24);
      }
      have_fmt = true;
    } else if (is_data) {
      data = bytes.data() + body;
      data_len = len;
      break;
    }
    pos = body + len + (len & 1);
  }
  if (!have_fmt) throw FormatError("missing fmt chunk");
  if (data == nullptr) throw IoError("missing or truncated data chunk");
  if (channels < 1) throw FormatError("zero channels");
  if (sample_rate <= 0) throw FormatError("nonpositive sample rate");

  const bool pcm16 = format == kFormatPcm && bits == 16;
  const bool float32 = format == kFormatFloat && bits == 32;
  if (!pcm16 && !float32)
    throw FormatError("unsupported encoding: format " + std::to_string(format) +
                      ", " + std::to_string(bits) + " bits");

  const std::size_t frame_bytes =
      static_cast<std::size_t>(channels) * (bits / 8);
  if (data_len % frame_bytes != 0)
    throw IoError("data chunk is not a whole number of sample frames");
  const std::size_t n = data_len / frame_bytes;

  if (channels > 1)
    log_warning("WAV has " + std::to_string(channels) +
                " channels; keeping channel 0 only");

  Waveform wave;
  wave.sample_rate_hz = sample_rate;
  wave.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned char *p = data + i * frame_bytes;
    if (pcm16) {
      const auto code = static_cast<std::int16_t>(get_u16(p));
      wave.samples[i] = code / 32768.0;
    } else {
      const float v = std::bit_cast<float>(get_u32(p));
      if (!std::isfinite(v)) throw FormatError("non-finite float sample");
      wave.samples[i] = v;
    }
  }
  if (info != nullptr) {
    info->channels = channels;
    info->bits_per_sample = bits;
    info->is_float = float32;
  }
  return wave;
}

Waveform read_wav(const std::filesystem::path &path, WavInfo *info) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for '" + path.string() + "'");
  try {
    return read_wav_bytes(bytes, info);
  } catch (const Error &e) {
    if (e.kind() == ErrorKind::kIo)
      throw IoError(path.string() + ": " + e.detail());
    throw FormatError(path.string() + ": " + e.detail());
  }
}

std::vector<unsigned char> encode_wav_pcm16(const Waveform &wave,
                                            std::size_t *clipped) {
  const std::uint32_t data_bytes =
      static_cast<std::uint32_t>(wave.samples.size() * 2);
  std::vector<unsigned char> out =
      wav_header(kFormatPcm, 1, wave.sample_rate_hz, 16, data_bytes);
  std::size_t clip_count = 0;
  for (double x : wave.samples) {
    if (!std::isfinite(x)) throw NumericError("non-finite sample in write");
    if (x > 1.0 || x < -1.0) ++clip_count;
    const long code =
        std::clamp(std::lround(x * 32768.0), -32768L, 32767L);
    put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(code)));
  }
  if (clipped != nullptr) *clipped = clip_count;
  return out;
}

std::vector<unsigned char> encode_wav_float32(const Waveform &wave,
                                              int channels) {
  const std::uint32_t data_bytes =
      static_cast<std::uint32_t>(wave.samples.size() * 4 * channels);
  std::vector<unsigned char> out =
      wav_header(kFormatFloat, channels, wave.sample_rate_hz, 32, data_bytes);
  for (double x : wave.samples)
    for (int c = 0; c < channels; ++c)
      put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(x)));
  return out;
}

std::size_t write_wav(const std::filesystem::path &path, const Waveform &wave) {
  std::size_t clipped = 0;
  const std::vector<unsigned char> bytes = encode_wav_pcm16(wave, &clipped);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
  if (clipped > 0)
    log_warning(path.string() + ": clipped " + std::to_string(clipped) +
                " samples");
  return clipped;
}

std::vector<Frame> frame_signal(const Waveform &wave, const FrameSpec &spec) {
  spec.validate();
  const std::size_t len = spec.frame_length(wave.sample_rate_hz);
  const std::size_t hop = spec.hop_length(wave.sample_rate_hz);
  if (len == 0 || hop == 0)
    throw ConfigError("frame spec yields zero-length frames at this rate");
  if (wave.size() < len)
    throw EmptyInputError("signal of " + std::to_string(wave.size()) +
                          " samples is shorter than one " +
                          std::to_string(len) + "-sample frame");

  const std::vector<double> window = make_window(spec.window, len);
  const std::size_t count = 1 + (wave.size() - len) / hop;
  std::vector<Frame> frames(count);
  for (std::size_t f = 0; f < count; ++f) {
    Frame &fr = frames[f];
    fr.index = f;
    fr.sample_rate_hz = wave.sample_rate_hz;
    fr.samples.resize(len);
    const double *src = wave.samples.data() + f * hop;
    for (std::size_t i = 0; i < len; ++i) fr.samples[i] = src[i] * window[i];
  }
  return frames;
}

Waveform overlap_add(std::span<const Frame> frames, const FrameSpec &spec,
                     bool synthesis_compensation) {
  Waveform out;
  if (frames.empty()) return out;
  out.sample_rate_hz = frames.front().sample_rate_hz;
  const std::size_t len = frames.front().size();
  for (const Frame &f : frames)
    if (f.size() != len)
      throw ShapeError("overlap_add: frames have unequal lengths");
  if (len != spec.frame_length(out.sample_rate_hz))
    throw ShapeError("overlap_add: frame length does not match frame spec");
  const std::size_t hop = spec.hop_length(out.sample_rate_hz);
  if (hop == 0) throw ConfigError("zero hop");

  const std::size_t total = (frames.size() - 1) * hop + len;
  out.samples.assign(total, 0.0);
  const std::vector<double> window = make_window(spec.window, len);
  std::vector<double> norm(synthesis_compensation ? total : 0, 0.0);
  for (std::size_t f = 0; f < frames.size(); ++f) {
    double *dst = out.samples.data() + f * hop;
    const std::vector<double> &src = frames[f].samples;
    if (synthesis_compensation) {
      for (std::size_t i = 0; i < len; ++i) {
        dst[i] += src[i] * window[i];
        norm[f * hop + i] += window[i] * window[i];
      }
    } else {
      for (std::size_t i = 0; i < len; ++i) dst[i] += src[i];
    }
  }
  if (synthesis_compensation) {
    // Samples where the window sum vanishes (frame edges of a periodic
    // window) carry no information and are left at zero.
    constexpr double kFloor = 1e-10;
    for (std::size_t i = 0; i < total; ++i)
      out.samples[i] = norm[i] > kFloor ? out.samples[i] / norm[i] : 0.0;
  }
  return out;
}

PaddedFrames frame_signal_padded(const Waveform &wave, const FrameSpec &spec) {
  spec.validate();
  const std::size_t len = spec.frame_length(wave.sample_rate_hz);
  const std::size_t hop = spec.hop_length(wave.sample_rate_hz);
  if (len == 0 || hop == 0)
    throw ConfigError("frame spec yields zero-length frames at this rate");
  PaddedFrames out;
  out.sample_rate_hz = wave.sample_rate_hz;
  out.length = wave.size();
  out.pad_front = len - hop;
  std::size_t total = out.pad_front + wave.size() + (len - hop);
  if (total < len) total = len;
  const std::size_t rem = (total - len) % hop;
  if (rem != 0) total += hop - rem;
  Waveform padded;
  padded.sample_rate_hz = wave.sample_rate_hz;
  padded.samples.assign(total, 0.0);
  std::copy(wave.samples.begin(), wave.samples.end(),
            padded.samples.begin() + static_cast<std::ptrdiff_t>(out.pad_front));
  out.frames = frame_signal(padded, spec);
  return out;
}

Waveform overlap_add_padded(const PaddedFrames &frames, const FrameSpec &spec) {
  Waveform full = overlap_add(frames.frames, spec, true);
  Waveform out;
  out.sample_rate_hz = frames.sample_rate_hz;
  out.samples.assign(frames.length, 0.0);
  for (std::size_t i = 0; i < frames.length; ++i) {
    const std::size_t j = i + frames.pad_front;
    if (j < full.size()) out.samples[i] = full.samples[j];
  }
  return out;
}

std::size_t clip_in_place(std::vector<double> &samples) {
  std::size_t n = 0;
  for (double &x : samples) {
    if (x > 1.0) {
      x = 1.0;
      ++n;
    } else if (x < -1.0) {
      x = -1.0;
      ++n;
    }
  }
  return n;
}

double energy(std::span<const double> x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

double rms(std::span<const double> x) {
  return x.empty() ? 0.0 : std::sqrt(energy(x) / static_cast<double>(x.size()));
}

}  // namespace childaug
