#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace vadbench {

inline constexpr std::uint32_t kCanonicalSampleRate = 16000;
inline constexpr double kMaxClipSeconds = 2.0 * 60.0 * 60.0;

// Mono 16-bit PCM at the canonical 16 kHz rate. Immutable once built.
class AudioClip {
 public:
  // Throws Error(kEmptyAudio) on no samples, kUnsupportedFormat on a rate
  // other than 16 kHz and kAudioTooLong past the two-hour bound.
  AudioClip(std::vector<std::int16_t> samples, std::uint32_t sample_rate,
            std::string source_id);

  std::span<const std::int16_t> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  std::uint32_t sample_rate() const { return sample_rate_; }
  const std::string& source_id() const { return source_id_; }

 private:
  std::vector<std::int16_t> samples_;
  std::uint32_t sample_rate_;
  std::string source_id_;
};

double clip_duration_seconds(const AudioClip& clip);

// Parses a RIFF/WAVE byte image. Accepts WAVE_FORMAT_PCM and
// WAVE_FORMAT_EXTENSIBLE with a PCM subformat; 16-bit, mono, 16 kHz only.
AudioClip decode_wav(std::span<const std::uint8_t> bytes, std::string source_id);

// Reads `path` and decodes it; source_id is the file stem.
AudioClip load_wav(const std::filesystem::path& path);

// Canonical 44-byte-header PCM WAV image of the clip.
std::vector<std::uint8_t> encode_wav(const AudioClip& clip);

void write_wav(const std::filesystem::path& path, const AudioClip& clip);

}  // namespace vadbench
