#include "effortwave/wav.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "effortwave/error.hpp"

namespace effortwave {

namespace {

constexpr std::uint32_t kHeaderBytes = 44;

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_tag(std::vector<std::uint8_t>& out, const char (&tag)[5]) {
    out.insert(out.end(), tag, tag + 4);
}

std::uint16_t get_u16(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
           (static_cast<std::uint32_t>(b[at + 2]) << 16) |
           (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t at, const char* tag) {
    return std::memcmp(b.data() + at, tag, 4) == 0;
}

[[noreturn]] void malformed(const std::string& what) {
    throw Error(ErrorKind::Parse, "wav: " + what);
}

}  // namespace

std::int16_t quantize_sample(double sample) {
    if (!(sample >= -1.0 && sample <= 1.0)) {
        throw Error(ErrorKind::Numerical, "wav: sample outside [-1, 1]");
    }
    return static_cast<std::int16_t>(std::lround(sample * 32767.0));
}

std::vector<std::uint8_t> encode_wav(const VibrationWaveform& wave) {
    const double rate = std::round(wave.sample_rate);
    if (!(rate >= 1.0) || rate > std::numeric_limits<std::uint32_t>::max() / 2.0) {
        throw Error(ErrorKind::Validation, "wav: unsupported sample rate");
    }
    const auto sample_rate = static_cast<std::uint32_t>(rate);
    const std::size_t data_bytes = wave.samples.size() * 2;
    if (data_bytes > std::numeric_limits<std::uint32_t>::max() - kHeaderBytes) {
        throw Error(ErrorKind::Validation, "wav: waveform too long for a RIFF container");
    }

    std::vector<std::uint8_t> out;
    out.reserve(kHeaderBytes + data_bytes);
    put_tag(out, "RIFF");
    put_u32(out, static_cast<std::uint32_t>(kHeaderBytes - 8 + data_bytes));
    put_tag(out, "WAVE");
    put_tag(out, "fmt ");
    put_u32(out, 16);
    put_u16(out, 1);  // PCM
    put_u16(out, 1);  // mono
    put_u32(out, sample_rate);
    put_u32(out, sample_rate * 2);
    put_u16(out, 2);
    put_u16(out, 16);
    put_tag(out, "data");
    put_u32(out, static_cast<std::uint32_t>(data_bytes));
    for (double s : wave.samples) {
        put_u16(out, static_cast<std::uint16_t>(quantize_sample(s)));
    }
    return out;
}

void write_wav(const VibrationWaveform& wave, const std::filesystem::path& path) {
    const auto bytes = encode_wav(wave);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorKind::Io, "write to '" + path.string() + "' failed");
}

PcmWav decode_wav(std::span<const std::uint8_t> b) {
    if (b.size() < 12 || !tag_is(b, 0, "RIFF") || !tag_is(b, 8, "WAVE")) {
        malformed("not a RIFF/WAVE file");
    }
    PcmWav wav;
    bool have_fmt = false;
    bool have_data = false;
    std::size_t at = 12;
    while (at + 8 <= b.size()) {
        const std::uint32_t size = get_u32(b, at + 4);
        const std::size_t body = at + 8;
        if (size > b.size() - body) malformed("chunk extends past end of file");
        if (tag_is(b, at, "fmt ")) {
            if (size < 16) malformed("fmt chunk too small");
            if (get_u16(b, body) != 1) malformed("only PCM is supported");
            wav.channels = get_u16(b, body + 2);
            wav.sample_rate = get_u32(b, body + 4);
            wav.byte_rate = get_u32(b, body + 8);
            wav.block_align = get_u16(b, body + 12);
            wav.bits_per_sample = get_u16(b, body + 14);
            if (wav.bits_per_sample != 16) malformed("only 16-bit samples are supported");
            have_fmt = true;
        } else if (tag_is(b, at, "data")) {
            if (!have_fmt) malformed("data chunk before fmt chunk");
            wav.samples.resize(size / 2);
            for (std::size_t i = 0; i < wav.samples.size(); ++i) {
                wav.samples[i] = static_cast<std::int16_t>(get_u16(b, body + 2 * i));
            }
            have_data = true;
        }
        at = body + size + (size & 1u);
    }
    if (!have_fmt || !have_data) malformed("missing fmt or data chunk");
    return wav;
}

PcmWav read_wav(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for reading");
    std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return decode_wav(bytes);
}

}  // namespace effortwave
