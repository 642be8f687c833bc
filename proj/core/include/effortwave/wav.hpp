#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "effortwave/haptics.hpp"

namespace effortwave {

/// Contents of a mono 16-bit PCM RIFF/WAVE file.
struct PcmWav {
    std::uint32_t sample_rate{0};
    std::uint16_t channels{1};
    std::uint16_t bits_per_sample{16};
    std::uint32_t byte_rate{0};
    std::uint16_t block_align{0};
    std::vector<std::int16_t> samples;
};

/// round-half-away-from-zero of sample * 32767. Throws Error{Numerical} when
/// the sample is outside [-1, 1] or not finite.
[[nodiscard]] std::int16_t quantize_sample(double sample);

/// Canonical 44-byte header followed by little-endian samples.
[[nodiscard]] std::vector<std::uint8_t> encode_wav(const VibrationWaveform& wave);

/// Throws Error{Io} when the file cannot be written.
void write_wav(const VibrationWaveform& wave, const std::filesystem::path& path);

/// Accepts mono or multi-channel 16-bit PCM; skips unknown chunks.
/// Throws Error{Parse} on malformed containers.
[[nodiscard]] PcmWav decode_wav(std::span<const std::uint8_t> bytes);
[[nodiscard]] PcmWav read_wav(const std::filesystem::path& path);

}  // namespace effortwave
