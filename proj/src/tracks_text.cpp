#include <charconv>
#include <sstream>

#include "tcc/error.hpp"
#include "tcc/tracks.hpp"

namespace tcc {

namespace {

std::uint64_t parse_count(const std::string& tok, std::size_t line) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw Error(ErrorKind::Syntax, "malformed count '" + tok + "'", line, 1);
    }
    return value;
}

std::string checked_id(const std::string& tok, std::size_t line) {
    if (!is_valid_vertex_id(tok)) throw Error(ErrorKind::InvalidVertexId, "invalid vertex id '" + tok + "'", line, 1);
    return tok;
}

}  // namespace

CountMatrix parse_counts(std::string_view text, CountSummary* summary) {
    CountMatrix m;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::vector<std::string> tok;
        for (std::string t; fields >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok.size() != 3) throw Error(ErrorKind::Syntax, "expected three fields", line_no, 1);

        if (tok[0] == "initial" || tok[0] == "final") {
            auto v = checked_id(tok[1], line_no);
            auto c = parse_count(tok[2], line_no);
            m.universe.insert(v);
            if (summary) (tok[0] == "initial" ? summary->initial : summary->final).emplace_back(v, c);
            continue;
        }
        auto src = checked_id(tok[0], line_no);
        auto dst = checked_id(tok[1], line_no);
        auto c = parse_count(tok[2], line_no);
        m.universe.insert(src);
        m.universe.insert(dst);
        m.counts[{src, dst}] += c;
    }
    return m;
}

std::string serialize_counts(const CountMatrix& counts) {
    std::string out;
    for (const auto& [key, c] : counts.counts) out += key.first + " " + key.second + " " + std::to_string(c) + "\n";
    return out;
}

std::string export_trellis(const Trellis& trellis) {
    std::string out;
    for (const auto& track : trellis.tracks) {
        for (std::size_t i = 0; i < track.states.size(); ++i) {
            if (i) out += '>';
            out += trellis.vertex_ids[track.states[i]];
            if (i < track.actions.size() && track.actions[i] >= 0) {
                out += '(' + trellis.action_labels[static_cast<std::size_t>(track.actions[i])] + ')';
            }
        }
        out += '\n';
    }
    return out;
}

}  // namespace tcc
