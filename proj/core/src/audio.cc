#include "vadbench/audio.h"

#include <array>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>

#include "vadbench/error.h"

namespace vadbench {
namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

// KSDATAFORMAT_SUBTYPE_PCM with the leading format tag stripped.
constexpr std::array<std::uint8_t, 14> kPcmSubformatTail = {
    0x00, 0x00, 0x00, 0x00, 0x10, 0x00, 0x80,
    0x00, 0x00, 0xAA, 0x00, 0x38, 0x9B, 0x71};

std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) |
         (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t at, const char* tag) {
  return std::memcmp(b.data() + at, tag, 4) == 0;
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) {
    out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xFF));
  }
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

struct FormatChunk {
  std::uint16_t format_tag = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits_per_sample = 0;
};

FormatChunk parse_fmt(std::span<const std::uint8_t> chunk) {
  if (chunk.size() < 16) {
    throw Error(ErrorCode::kNotRiffWav, "fmt chunk shorter than 16 bytes");
  }
  FormatChunk fmt;
  fmt.format_tag = read_u16(chunk, 0);
  fmt.channels = read_u16(chunk, 2);
  fmt.sample_rate = read_u32(chunk, 4);
  fmt.block_align = read_u16(chunk, 12);
  fmt.bits_per_sample = read_u16(chunk, 14);

  if (fmt.format_tag == kFormatExtensible) {
    // cbSize(2) validBits(2) channelMask(4) subformat GUID(16)
    if (chunk.size() < 40) {
      throw Error(ErrorCode::kNotRiffWav, "truncated WAVE_FORMAT_EXTENSIBLE fmt chunk");
    }
    const std::uint16_t sub_tag = read_u16(chunk, 24);
    const bool pcm_guid =
        sub_tag == kFormatPcm &&
        std::memcmp(chunk.data() + 26, kPcmSubformatTail.data(),
                    kPcmSubformatTail.size()) == 0;
    if (!pcm_guid) {
      throw Error(ErrorCode::kUnsupportedFormat,
                  "WAVE_FORMAT_EXTENSIBLE with a non-PCM subformat");
    }
    fmt.format_tag = kFormatPcm;
  }
  return fmt;
}

}  // namespace

AudioClip::AudioClip(std::vector<std::int16_t> samples, std::uint32_t sample_rate,
                     std::string source_id)
    : samples_(std::move(samples)),
      sample_rate_(sample_rate),
      source_id_(std::move(source_id)) {
  if (samples_.empty()) {
    throw Error(ErrorCode::kEmptyAudio, "clip '" + source_id_ + "' has no samples");
  }
  if (sample_rate_ != kCanonicalSampleRate) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "sample rate " + std::to_string(sample_rate_) + " Hz, expected 16000 Hz");
  }
  if (static_cast<double>(samples_.size()) / sample_rate_ > kMaxClipSeconds) {
    throw Error(ErrorCode::kAudioTooLong,
                "clip '" + source_id_ + "' is longer than two hours");
  }
}

double clip_duration_seconds(const AudioClip& clip) {
  return static_cast<double>(clip.size()) / static_cast<double>(clip.sample_rate());
}

AudioClip decode_wav(std::span<const std::uint8_t> bytes, std::string source_id) {
  if (bytes.size() < 12 || !tag_is(bytes, 0, "RIFF") || !tag_is(bytes, 8, "WAVE")) {
    throw Error(ErrorCode::kNotRiffWav, "missing RIFF/WAVE header");
  }

  std::optional<FormatChunk> fmt;
  std::optional<std::span<const std::uint8_t>> data;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint32_t chunk_size = read_u32(bytes, pos + 4);
    const std::size_t body = pos + 8;
    if (chunk_size > bytes.size() - body) {
      throw Error(ErrorCode::kNotRiffWav, "chunk extends past end of file");
    }
    auto chunk = bytes.subspan(body, chunk_size);
    if (tag_is(bytes, pos, "fmt ")) {
      fmt = parse_fmt(chunk);
    } else if (tag_is(bytes, pos, "data")) {
      data = chunk;
    }
    // Chunks are word aligned.
    pos = body + chunk_size + (chunk_size & 1u);
  }

  if (!fmt) throw Error(ErrorCode::kNotRiffWav, "no fmt chunk");
  if (!data) throw Error(ErrorCode::kNotRiffWav, "no data chunk");

  if (fmt->format_tag != kFormatPcm) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "format tag " + std::to_string(fmt->format_tag) + " is not PCM");
  }
  if (fmt->bits_per_sample != 16) {
    throw Error(ErrorCode::kUnsupportedFormat,
                std::to_string(fmt->bits_per_sample) + "-bit samples, expected 16-bit");
  }
  if (fmt->channels != 1) {
    throw Error(ErrorCode::kUnsupportedFormat,
                std::to_string(fmt->channels) + " channels, expected mono");
  }
  if (fmt->sample_rate != kCanonicalSampleRate) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "sample rate " + std::to_string(fmt->sample_rate) + " Hz, expected 16000 Hz");
  }
  if (fmt->block_align != 2) {
    throw Error(ErrorCode::kUnsupportedFormat, "block align is not 2 bytes");
  }
  if (data->size() % 2 != 0) {
    throw Error(ErrorCode::kNotRiffWav, "data chunk holds a partial sample");
  }
  if (data->empty()) {
    throw Error(ErrorCode::kEmptyAudio, "data chunk is empty");
  }

  std::vector<std::int16_t> samples(data->size() / 2);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i] = static_cast<std::int16_t>(read_u16(*data, 2 * i));
  }
  return AudioClip(std::move(samples), fmt->sample_rate, std::move(source_id));
}

AudioClip load_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw Error(ErrorCode::kIoFailure, "read failed for " + path.string());
  }
  return decode_wav(bytes, path.stem().string());
}

std::vector<std::uint8_t> encode_wav(const AudioClip& clip) {
  const auto data_bytes = static_cast<std::uint32_t>(clip.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);
  put_u32(out, clip.sample_rate());
  put_u32(out, clip.sample_rate() * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  put_tag(out, "data");
  put_u32(out, data_bytes);
  for (std::int16_t s : clip.samples()) {
    put_u16(out, static_cast<std::uint16_t>(s));
  }
  return out;
}

void write_wav(const std::filesystem::path& path, const AudioClip& clip) {
  const auto bytes = encode_wav(clip);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIoFailure, "cannot create " + path.string());
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw Error(ErrorCode::kIoFailure, "write failed for " + path.string());
  }
}

}  // namespace vadbench
