#include "rbg/board.hpp"

#include <json.hpp>

namespace rbg {

namespace {

const char* kB64 = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(const std::vector<std::uint8_t>& data) {
    std::string out;
    out.reserve((data.size() + 2) / 3 * 4);
    size_t i = 0;
    while (i + 3 <= data.size()) {
        std::uint32_t v = (data[i] << 16) | (data[i + 1] << 8) | data[i + 2];
        i += 3;
        out.push_back(kB64[(v >> 18) & 63]);
        out.push_back(kB64[(v >> 12) & 63]);
        out.push_back(kB64[(v >> 6) & 63]);
        out.push_back(kB64[v & 63]);
    }
    const size_t rest = data.size() - i;
    if (rest == 1) {
        std::uint32_t v = data[i] << 16;
        out.push_back(kB64[(v >> 18) & 63]);
        out.push_back(kB64[(v >> 12) & 63]);
        out += "==";
    } else if (rest == 2) {
        std::uint32_t v = (data[i] << 16) | (data[i + 1] << 8);
        out.push_back(kB64[(v >> 18) & 63]);
        out.push_back(kB64[(v >> 12) & 63]);
        out.push_back(kB64[(v >> 6) & 63]);
        out.push_back('=');
    }
    return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
    int lookup[256];
    for (int& x : lookup) x = -1;
    for (int i = 0; i < 64; ++i) lookup[static_cast<unsigned char>(kB64[i])] = i;
    std::vector<std::uint8_t> out;
    std::uint32_t acc = 0;
    int bits = 0;
    for (char ch : text) {
        if (ch == '=') break;
        const int v = lookup[static_cast<unsigned char>(ch)];
        if (v < 0) throw BoardError("bad base64 character");
        acc = (acc << 6) | static_cast<std::uint32_t>(v);
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out.push_back(static_cast<std::uint8_t>((acc >> bits) & 0xff));
        }
    }
    return out;
}

// Run-length pairs (state, count) with counts capped at 255 per chunk.
std::vector<std::uint8_t> rle_encode(const std::vector<ClaimState>& states) {
    std::vector<std::uint8_t> out;
    size_t i = 0;
    while (i < states.size()) {
        const auto st = states[i];
        size_t run = 1;
        while (i + run < states.size() && states[i + run] == st && run < 255) ++run;
        out.push_back(static_cast<std::uint8_t>(st));
        out.push_back(static_cast<std::uint8_t>(run));
        i += run;
    }
    return out;
}

std::vector<ClaimState> rle_decode(const std::vector<std::uint8_t>& data, size_t expected) {
    std::vector<ClaimState> out;
    out.reserve(expected);
    if (data.size() % 2 != 0) throw BoardError("bad RLE payload");
    for (size_t i = 0; i < data.size(); i += 2) {
        if (data[i] > 3) throw BoardError("bad claim state in RLE payload");
        for (int k = 0; k < data[i + 1]; ++k) out.push_back(static_cast<ClaimState>(data[i]));
    }
    if (out.size() != expected) throw BoardError("RLE length mismatch");
    return out;
}

}  // namespace

std::string Board::to_json() const {
    nlohmann::json j;
    j["n"] = n_;
    j["s"] = s_;
    j["states"] = base64_encode(rle_encode(states_));
    std::vector<int> part(n_);
    for (int v = 0; v < n_; ++v) part[v] = side_of(v) == Side::L ? 0 : 1;
    j["bipartition"] = part;
    return j.dump();
}

Board Board::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    Board b = Board::layered_complete(j.at("n").get<int>(), j.at("s").get<int>());
    const auto states =
        rle_decode(base64_decode(j.at("states").get<std::string>()), b.states_.size());
    b.counts_[0] = b.counts_[1] = b.counts_[2] = b.counts_[3] = 0;
    for (size_t i = 0; i < states.size(); ++i) {
        b.states_[i] = states[i];
        ++b.counts_[static_cast<int>(states[i])];
    }
    return b;
}

}  // namespace rbg
