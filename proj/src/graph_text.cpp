#include <charconv>
#include <cstdio>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tcc/error.hpp"
#include "tcc/graph.hpp"

namespace tcc {

namespace {

struct Token {
    std::string_view text;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size() || line[i] == '#') break;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        tokens.push_back({line.substr(start, i - start), start + 1});
    }
    return tokens;
}

std::optional<double> parse_double(std::string_view text) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

std::string format_weight(double w) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", w);
    return buf;
}

}  // namespace

TransitionGraph parse_text(std::string_view text) {
    std::optional<std::string> name;
    std::optional<VertexId> target;
    std::optional<GraphMode> mode;
    std::vector<VertexId> vertices;
    std::vector<ArcSpec> arcs;
    std::vector<std::size_t> arc_lines;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        auto tokens = tokenize(line);
        if (tokens.empty()) {
            if (end == text.size()) break;
            continue;
        }
        auto fail = [&](const Token& tok, const std::string& msg) -> Error {
            return Error(ErrorKind::Syntax, msg, line_no, tok.column);
        };
        auto check_id = [&](const Token& tok) {
            if (!is_valid_vertex_id(tok.text)) {
                throw Error(ErrorKind::InvalidVertexId, "invalid vertex id '" + std::string(tok.text) + "'",
                            line_no, tok.column);
            }
            return std::string(tok.text);
        };
        const auto& head = tokens[0];

        if (head.text == "graph") {
            if (tokens.size() != 2) throw fail(head, "expected 'graph <name>'");
            if (name) throw fail(head, "graph name given twice");
            name = std::string(tokens[1].text);
        } else if (head.text == "target") {
            if (tokens.size() != 2) throw fail(head, "expected 'target <vertex>'");
            if (target) {
                throw Error(ErrorKind::MultipleTargets, "only one target vertex is supported", line_no,
                            head.column);
            }
            target = check_id(tokens[1]);
        } else if (head.text == "mode") {
            if (tokens.size() != 2) throw fail(head, "expected 'mode deterministic|multi|stochastic'");
            if (mode) throw fail(head, "mode given twice");
            mode = parse_mode(tokens[1].text);
            if (!mode) throw fail(tokens[1], "unknown mode '" + std::string(tokens[1].text) + "'");
        } else if (head.text == "vertex") {
            if (tokens.size() < 2) throw fail(head, "expected 'vertex <id>...'");
            for (std::size_t i = 1; i < tokens.size(); ++i) vertices.push_back(check_id(tokens[i]));
        } else {
            if (tokens.size() < 2) throw fail(head, "expected '<src> <dst> [p=<w>] [action=<a>]'");
            ArcSpec arc{check_id(tokens[0]), check_id(tokens[1]), std::nullopt, std::nullopt};
            for (std::size_t i = 2; i < tokens.size(); ++i) {
                const auto& tok = tokens[i];
                if (tok.text.starts_with("p=")) {
                    if (arc.weight) throw fail(tok, "weight given twice");
                    arc.weight = parse_double(tok.text.substr(2));
                    if (!arc.weight) throw fail(tok, "malformed weight '" + std::string(tok.text) + "'");
                } else if (tok.text.starts_with("action=")) {
                    if (arc.action) throw fail(tok, "action given twice");
                    if (tok.text.size() == 7) throw fail(tok, "empty action label");
                    arc.action = std::string(tok.text.substr(7));
                } else {
                    throw fail(tok, "unexpected token '" + std::string(tok.text) + "'");
                }
            }
            vertices.push_back(arc.source);
            vertices.push_back(arc.destination);
            arcs.push_back(std::move(arc));
            arc_lines.push_back(line_no);
        }
        if (end == text.size()) break;
    }

    if (!target) throw Error(ErrorKind::MissingTarget, "no 'target <vertex>' line", line_no, 1);

    // Report arc-level defects with their line before handing over to build_graph.
    std::set<std::pair<std::string_view, std::string_view>> seen;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        if (arcs[i].source == *target) {
            throw Error(ErrorKind::TargetHasOutgoing, "target '" + *target + "' has an outgoing arc", arc_lines[i],
                        1);
        }
        if (!seen.emplace(arcs[i].source, arcs[i].destination).second) {
            throw Error(ErrorKind::DuplicateArc, "duplicate arc " + arcs[i].source + " -> " + arcs[i].destination,
                        arc_lines[i], 1);
        }
    }
    return build_graph(std::move(vertices), *target, std::move(arcs), mode, std::move(name));
}

std::string serialize_text(const TransitionGraph& graph) {
    std::string out;
    if (graph.name()) out += "graph " + *graph.name() + "\n";
    out += "target " + graph.id(graph.target()) + "\n";
    out += "mode " + std::string(to_string(graph.mode())) + "\n";

    std::vector<bool> mentioned(graph.size(), false);
    mentioned[graph.target()] = true;
    for (const auto& a : graph.arcs()) mentioned[a.source] = mentioned[a.destination] = true;
    for (Vertex v = 0; v < graph.size(); ++v) {
        if (!mentioned[v]) out += "vertex " + graph.id(v) + "\n";
    }
    for (const auto& a : graph.arcs()) {
        out += graph.id(a.source) + " " + graph.id(a.destination);
        if (a.weight) out += " p=" + format_weight(*a.weight);
        if (a.action) out += " action=" + *a.action;
        out += "\n";
    }
    return out;
}

}  // namespace tcc
