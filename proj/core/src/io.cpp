#include "berscan/io.hpp"

#include <array>
#include <cstdint>
#include <cstdio>
#include <cstring>

namespace berscan {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_ppm(std::ostream& os, const RasterResult& img) {
    os << "P6\n" << img.resolution << ' ' << img.resolution << "\n255\n";
    const auto rgb = img.rgb();
    os.write(reinterpret_cast<const char*>(rgb.data()),
             static_cast<std::streamsize>(rgb.size()));
}

namespace {

std::uint32_t crc32_update(std::uint32_t crc, const std::uint8_t* data,
                           std::size_t len) {
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int k = 0; k < 8; ++k)
                c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    for (std::size_t i = 0; i < len; ++i)
        crc = table[(crc ^ data[i]) & 0xFFu] ^ (crc >> 8);
    return crc;
}

void put_be32(std::vector<std::uint8_t>& v, std::uint32_t x) {
    v.push_back(static_cast<std::uint8_t>(x >> 24));
    v.push_back(static_cast<std::uint8_t>(x >> 16));
    v.push_back(static_cast<std::uint8_t>(x >> 8));
    v.push_back(static_cast<std::uint8_t>(x));
}

void write_chunk(std::ostream& os, const char type[4],
                 const std::vector<std::uint8_t>& data) {
    std::vector<std::uint8_t> head;
    put_be32(head, static_cast<std::uint32_t>(data.size()));
    os.write(reinterpret_cast<const char*>(head.data()), 4);
    os.write(type, 4);
    if (!data.empty())
        os.write(reinterpret_cast<const char*>(data.data()),
                 static_cast<std::streamsize>(data.size()));
    std::uint32_t crc = 0xFFFFFFFFu;
    crc = crc32_update(crc, reinterpret_cast<const std::uint8_t*>(type), 4);
    if (!data.empty()) crc = crc32_update(crc, data.data(), data.size());
    crc ^= 0xFFFFFFFFu;
    std::vector<std::uint8_t> tail;
    put_be32(tail, crc);
    os.write(reinterpret_cast<const char*>(tail.data()), 4);
}

}  // namespace

void write_png(std::ostream& os, const RasterResult& img) {
    static const std::uint8_t sig[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A,
                                        0x1A, 0x0A};
    os.write(reinterpret_cast<const char*>(sig), 8);

    const std::uint32_t n = static_cast<std::uint32_t>(img.resolution);
    std::vector<std::uint8_t> ihdr;
    put_be32(ihdr, n);
    put_be32(ihdr, n);
    ihdr.push_back(8);   // bit depth
    ihdr.push_back(2);   // truecolor
    ihdr.push_back(0);   // deflate
    ihdr.push_back(0);   // adaptive filters
    ihdr.push_back(0);   // no interlace
    write_chunk(os, "IHDR", ihdr);

    // Raw scanlines, filter byte 0 per row.
    const auto rgb = img.rgb();
    std::vector<std::uint8_t> raw;
    raw.reserve((static_cast<std::size_t>(n) * 3 + 1) * n);
    for (std::uint32_t row = 0; row < n; ++row) {
        raw.push_back(0);
        const std::size_t off = static_cast<std::size_t>(row) * n * 3;
        raw.insert(raw.end(), rgb.begin() + static_cast<std::ptrdiff_t>(off),
                   rgb.begin() + static_cast<std::ptrdiff_t>(off + n * 3));
    }

    // zlib wrapper around stored deflate blocks.
    std::vector<std::uint8_t> idat;
    idat.push_back(0x78);
    idat.push_back(0x01);
    std::size_t pos = 0;
    while (pos < raw.size() || raw.empty()) {
        const std::size_t chunk = std::min<std::size_t>(65535, raw.size() - pos);
        const bool final = pos + chunk >= raw.size();
        idat.push_back(final ? 1 : 0);
        idat.push_back(static_cast<std::uint8_t>(chunk & 0xFF));
        idat.push_back(static_cast<std::uint8_t>(chunk >> 8));
        idat.push_back(static_cast<std::uint8_t>(~chunk & 0xFF));
        idat.push_back(static_cast<std::uint8_t>((~chunk >> 8) & 0xFF));
        idat.insert(idat.end(), raw.begin() + static_cast<std::ptrdiff_t>(pos),
                    raw.begin() + static_cast<std::ptrdiff_t>(pos + chunk));
        pos += chunk;
        if (final) break;
    }
    std::uint32_t s1 = 1, s2 = 0;
    for (const std::uint8_t b : raw) {
        s1 = (s1 + b) % 65521;
        s2 = (s2 + s1) % 65521;
    }
    put_be32(idat, (s2 << 16) | s1);
    write_chunk(os, "IDAT", idat);
    write_chunk(os, "IEND", {});
}

namespace {

std::string complex_json(Complex z) {
    return "[" + format_g17(z.real()) + ", " + format_g17(z.imag()) + "]";
}

}  // namespace

std::string centers_json(const std::vector<CenterRecord>& centers) {
    std::string out = "[";
    bool first_rec = true;
    for (const CenterRecord& rec : centers) {
        if (!first_rec) out += ",";
        first_rec = false;
        out += "\n  {\"c\": " + complex_json(rec.c);
        out += ", \"traces\": [" + complex_json(rec.character.x) + ", " +
               complex_json(rec.character.y) + ", " +
               complex_json(rec.character.z) + "]";
        out += ", \"residual\": " + format_g17(rec.residual);
        out += ", \"lengths\": {";
        bool first_len = true;
        for (const auto& [slope, len] : rec.lengths) {
            if (!first_len) out += ", ";
            first_len = false;
            out += "\"" + slope.str() + "\": " + format_g17(len);
        }
        out += "}";
        if (rec.label) {
            out += ", \"label\": {\"slope\": \"" + rec.label->first.str() +
                   "\", \"multiple\": " + std::to_string(rec.label->second) +
                   "}";
        }
        out += "}";
    }
    out += "\n]\n";
    return out;
}

std::string raster_stats_json(const RasterConfig& cfg,
                              const RasterStats& stats) {
    std::string out = "{\n";
    out += "  \"config\": {";
    out += "\"center\": " + complex_json(cfg.center);
    out += ", \"width\": " + format_g17(cfg.width);
    out += ", \"height\": " + format_g17(cfg.height);
    out += ", \"resolution\": " + std::to_string(cfg.resolution);
    out += ", \"max_depth\": " + std::to_string(cfg.bq.max_depth);
    out += ", \"growth_bound\": " + format_g17(cfg.bq.growth_bound);
    out += ", \"ode_tol\": " + format_g17(cfg.holonomy.ode.tol);
    out += ", \"seed_threshold\": " + format_g17(cfg.seed_threshold);
    out += "},\n";
    out += "  \"counts\": {";
    out += "\"qf_gray\": " + std::to_string(stats.counts[0]);
    out += ", \"center_black\": " + std::to_string(stats.counts[1]);
    out += ", \"outside_white\": " + std::to_string(stats.counts[2]);
    out += ", \"inconclusive\": " + std::to_string(stats.counts[3]);
    out += "},\n";
    out += "  \"mean_ode_error\": " + format_g17(stats.mean_ode_error) + ",\n";
    out += "  \"max_kappa_defect\": " + format_g17(stats.max_kappa_defect) +
           ",\n";
    out += "  \"max_det_defect\": " + format_g17(stats.max_det_defect) + "\n";
    out += "}\n";
    return out;
}

std::string trace_at_json(Complex c, const PointClassification& pc,
                          double error_estimate,
                          const std::optional<Slope>& witness) {
    std::string out = "{";
    out += "\"c\": " + complex_json(c);
    out += ", \"traces\": [" + complex_json(pc.character.x) + ", " +
           complex_json(pc.character.y) + ", " + complex_json(pc.character.z) +
           "]";
    out += ", \"kappa\": " + complex_json(commutator_trace(pc.character));
    out += ", \"verdict\": \"" + std::string(to_string(pc.verdict)) + "\"";
    out += ", \"witness\": ";
    out += witness ? "\"" + witness->str() + "\"" : std::string("null");
    out += ", \"error_estimate\": " + format_g17(error_estimate);
    out += "}\n";
    return out;
}

}  // namespace berscan
