// childaug/audio_io.h

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

#ifndef CHILDAUG_AUDIO_IO_H_
#define CHILDAUG_AUDIO_IO_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace childaug {

/// Mono waveform with samples nominally in [-1, 1].
struct Waveform {
  std::vector<double> samples;
  int sample_rate_hz = 16000;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

enum class WindowType { kHann, kHamming, kRect };

WindowType parse_window(std::string_view name);
const char *window_name(WindowType w);

/// Periodic window of length `n`.
std::vector<double> make_window(WindowType type, std::size_t n);

struct FrameSpec {
  double frame_len_ms = 25.0;
  double hop_ms = 10.0;
  WindowType window = WindowType::kHann;

  // Throws ConfigError unless 0 < hop_ms <= frame_len_ms.
  void validate() const;
  std::size_t frame_length(int sample_rate_hz) const;
  std::size_t hop_length(int sample_rate_hz) const;
};

/// A windowed analysis segment. `index` is the position in the framing.
struct Frame {
  std::vector<double> samples;
  int sample_rate_hz = 16000;
  std::size_t index = 0;

  std::size_t size() const { return samples.size(); }
};

struct WavInfo {
  int channels = 0;
  int bits_per_sample = 0;
  bool is_float = false;
};

/// Reads PCM-16 or IEEE-float-32 RIFF/WAVE. Multichannel input keeps channel
/// 0 and logs a warning. Throws FormatError / IoError.
Waveform read_wav(const std::filesystem::path &path, WavInfo *info = nullptr);
Waveform read_wav_bytes(std::span<const unsigned char> bytes,
                        WavInfo *info = nullptr);

/// Writes 16-bit PCM. Samples outside [-1, 1] are clamped; the number of
/// clamped samples is returned (and logged when nonzero).
std::size_t write_wav(const std::filesystem::path &path, const Waveform &wave);
std::vector<unsigned char> encode_wav_pcm16(const Waveform &wave,
                                            std::size_t *clipped = nullptr);

/// Float-32 encoder; only used to produce test fixtures and diagnostics.
std::vector<unsigned char> encode_wav_float32(const Waveform &wave,
                                              int channels = 1);

/// Splits `wave` into 1 + floor((N - L) / H) windowed frames.
/// Throws EmptyInputError when the signal is shorter than one frame.
std::vector<Frame> frame_signal(const Waveform &wave, const FrameSpec &spec);

/// Overlap-adds frames at the spec's hop. With `synthesis_compensation`, each
/// frame is multiplied by the window again and the sum divided by the summed
/// squared window (weighted overlap-add), so unmodified frames reproduce the
/// input in the fully overlapped interior. Throws ShapeError on ragged input.
Waveform overlap_add(std::span<const Frame> frames, const FrameSpec &spec,
                     bool synthesis_compensation);

/// Framing with zero padding so that every input sample lies in the fully
/// overlapped region; pair with overlap_add_padded to get back exactly
/// `length` samples.
struct PaddedFrames {
  std::vector<Frame> frames;
  std::size_t pad_front = 0;
  std::size_t length = 0;
  int sample_rate_hz = 16000;
};

PaddedFrames frame_signal_padded(const Waveform &wave, const FrameSpec &spec);
Waveform overlap_add_padded(const PaddedFrames &frames, const FrameSpec &spec);

/// Clamps to [-1, 1]; returns the number of samples changed.
std::size_t clip_in_place(std::vector<double> &samples);

double energy(std::span<const double> x);
double rms(std::span<const double> x);

}  // namespace childaug

#endif  // CHILDAUG_AUDIO_IO_H_
