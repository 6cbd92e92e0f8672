#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

#include "gcrp/instance.hpp"

namespace gcrp {

ParseError::ParseError(Kind kind, int line, const std::string& message)
    : Error("line " + std::to_string(line) + ": " + message), kind_(kind), line_(line) {}

namespace {

using PK = ParseError::Kind;

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

long long to_int(std::string_view tok, int line) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(PK::Malformed, line, "expected an integer, got '" + std::string(tok) + "'");
    return value;
}

struct Line {
    int number;
    std::vector<std::string_view> tokens;
};

}  // namespace

MetricInstance parse_instance(std::string_view text) {
    std::vector<Line> lines;
    {
        int number = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t end = text.find('\n', pos);
            if (end == std::string_view::npos) end = text.size();
            ++number;
            std::string_view raw = text.substr(pos, end - pos);
            if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
            auto tokens = split_tokens(raw);
            if (!tokens.empty()) lines.push_back({number, std::move(tokens)});
            pos = end + 1;
        }
    }
    if (lines.empty()) throw ParseError(PK::Header, 1, "empty input, expected 'gcrp v1'");
    if (lines[0].tokens.size() != 2 || lines[0].tokens[0] != "gcrp" || lines[0].tokens[1] != "v1")
        throw ParseError(PK::Header, lines[0].number, "expected header 'gcrp v1'");

    std::optional<long long> n;
    std::optional<long long> k;
    std::optional<DistanceMatrix> dist;
    std::map<int, std::vector<Vertex>> clusters;
    std::map<int, int> cluster_line;
    std::vector<Vertex> required_vertices;
    std::vector<VertexPair> required_edges;
    std::map<int, ClusterEnds> ends;
    std::map<int, int> ends_line;
    bool saw_required_v = false;
    const int last_line = lines.back().number;

    auto need_n = [&](int line) {
        if (!n) throw ParseError(PK::Missing, line, "'n' must precede this line");
        return *n;
    };
    auto vertex = [&](std::string_view tok, int line) {
        long long v = to_int(tok, line);
        if (v < 0 || v >= need_n(line))
            throw ParseError(PK::Range, line, "vertex " + std::string(tok) + " out of range");
        return static_cast<Vertex>(v);
    };
    auto cluster_index = [&](std::string_view tok, int line) {
        if (!k) throw ParseError(PK::Missing, line, "'k' must precede this line");
        long long i = to_int(tok, line);
        if (i < 0 || i >= *k) throw ParseError(PK::Range, line, "cluster index " + std::string(tok) + " out of range");
        return static_cast<int>(i);
    };

    for (std::size_t li = 1; li < lines.size(); ++li) {
        const Line& L = lines[li];
        const auto& t = L.tokens;
        const std::string_view key = t[0];
        if (key == "n" || key == "k") {
            if (t.size() != 2) throw ParseError(PK::Malformed, L.number, "expected '" + std::string(key) + " <int>'");
            long long value = to_int(t[1], L.number);
            if (value < 1) throw ParseError(PK::Range, L.number, std::string(key) + " must be positive");
            auto& slot = key == "n" ? n : k;
            if (slot) throw ParseError(PK::Malformed, L.number, "duplicate '" + std::string(key) + "'");
            slot = value;
        } else if (key == "dist") {
            if (t.size() != 1) throw ParseError(PK::Malformed, L.number, "'dist' takes no arguments");
            if (dist) throw ParseError(PK::Malformed, L.number, "duplicate 'dist'");
            const auto size = static_cast<std::size_t>(need_n(L.number));
            DistanceMatrix d(size);
            for (std::size_t r = 0; r < size; ++r) {
                if (li + 1 >= lines.size() ||
                    (!std::isdigit(static_cast<unsigned char>(lines[li + 1].tokens[0][0])) &&
                     lines[li + 1].tokens[0][0] != '-'))
                    throw ParseError(PK::Dimension, li + 1 < lines.size() ? lines[li + 1].number : last_line,
                                     "dist has " + std::to_string(r) + " rows, expected " + std::to_string(size));
                ++li;
                const Line& row = lines[li];
                if (row.tokens.size() != size)
                    throw ParseError(PK::Dimension, row.number,
                                     "dist row has " + std::to_string(row.tokens.size()) + " entries, expected " +
                                         std::to_string(size));
                for (std::size_t c = 0; c < size; ++c)
                    d.at(static_cast<Vertex>(r), static_cast<Vertex>(c)) = to_int(row.tokens[c], row.number);
            }
            dist = std::move(d);
        } else if (key == "cluster") {
            if (t.size() < 3) throw ParseError(PK::Malformed, L.number, "expected 'cluster <i> <v...>'");
            int i = cluster_index(t[1], L.number);
            if (clusters.count(i)) throw ParseError(PK::Partition, L.number, "cluster " + std::to_string(i) + " listed twice");
            std::vector<Vertex> members;
            for (std::size_t j = 2; j < t.size(); ++j) members.push_back(vertex(t[j], L.number));
            clusters[i] = std::move(members);
            cluster_line[i] = L.number;
        } else if (key == "requiredV") {
            if (saw_required_v) throw ParseError(PK::Malformed, L.number, "duplicate 'requiredV'");
            saw_required_v = true;
            for (std::size_t j = 1; j < t.size(); ++j) required_vertices.push_back(vertex(t[j], L.number));
        } else if (key == "requiredE") {
            if (t.size() != 3) throw ParseError(PK::Malformed, L.number, "expected 'requiredE <u> <v>'");
            Vertex a = vertex(t[1], L.number);
            Vertex b = vertex(t[2], L.number);
            if (a == b) throw ParseError(PK::Malformed, L.number, "required edge needs two distinct vertices");
            required_edges.emplace_back(a, b);
        } else if (key == "ends") {
            if (t.size() != 4) throw ParseError(PK::Malformed, L.number, "expected 'ends <i> <s> <t>'");
            int i = cluster_index(t[1], L.number);
            if (ends.count(i)) throw ParseError(PK::Endpoint, L.number, "ends for cluster " + std::to_string(i) + " given twice");
            ends[i] = {vertex(t[2], L.number), vertex(t[3], L.number)};
            ends_line[i] = L.number;
        } else {
            throw ParseError(PK::Malformed, L.number, "unknown key '" + std::string(key) + "'");
        }
    }

    if (!n) throw ParseError(PK::Missing, last_line, "missing 'n'");
    if (!k) throw ParseError(PK::Missing, last_line, "missing 'k'");
    if (!dist) throw ParseError(PK::Missing, last_line, "missing 'dist'");
    if (static_cast<long long>(clusters.size()) != *k)
        throw ParseError(PK::Partition, last_line,
                         "expected " + std::to_string(*k) + " clusters, found " + std::to_string(clusters.size()));

    std::vector<int> owner(static_cast<std::size_t>(*n), -1);
    for (const auto& [i, members] : clusters)
        for (Vertex v : members) {
            if (owner[v] != -1)
                throw ParseError(PK::Partition, cluster_line[i],
                                 "vertex " + std::to_string(v) + " is in clusters " + std::to_string(owner[v]) +
                                     " and " + std::to_string(i));
            owner[v] = i;
        }
    for (Vertex v = 0; v < *n; ++v)
        if (owner[v] == -1)
            throw ParseError(PK::Partition, last_line, "vertex " + std::to_string(v) + " is in no cluster");

    std::optional<std::vector<ClusterEnds>> end_list;
    if (!ends.empty()) {
        if (static_cast<long long>(ends.size()) != *k)
            throw ParseError(PK::Endpoint, ends_line.rbegin()->second, "ends must be given for every cluster or none");
        end_list.emplace();
        for (const auto& [i, e] : ends) {
            if (owner[e.start] != i || owner[e.end] != i)
                throw ParseError(PK::Endpoint, ends_line[i], "endpoint outside cluster " + std::to_string(i));
            end_list->push_back(e);
        }
    }

    std::vector<std::vector<Vertex>> cluster_list;
    for (auto& [i, members] : clusters) cluster_list.push_back(std::move(members));
    return make_instance(std::move(*dist), std::move(cluster_list), std::move(required_vertices),
                         std::move(required_edges), std::move(end_list));
}

std::string serialize_instance(const MetricInstance& inst) {
    std::ostringstream os;
    const std::size_t n = inst.size();
    os << "gcrp v1\n";
    os << "n " << n << "\n";
    os << "k " << inst.cluster_count() << "\n";
    os << "dist\n";
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            if (c) os << ' ';
            os << inst.dist(static_cast<Vertex>(r), static_cast<Vertex>(c));
        }
        os << "\n";
    }
    for (std::size_t i = 0; i < inst.cluster_count(); ++i) {
        os << "cluster " << i;
        for (Vertex v : inst.clusters[i]) os << ' ' << v;
        os << "\n";
    }
    os << "requiredV";
    for (Vertex v : inst.required_vertices) os << ' ' << v;
    os << "\n";
    for (const VertexPair& e : inst.required_edges) os << "requiredE " << e.u << ' ' << e.v << "\n";
    if (inst.ends)
        for (std::size_t i = 0; i < inst.ends->size(); ++i)
            os << "ends " << i << ' ' << (*inst.ends)[i].start << ' ' << (*inst.ends)[i].end << "\n";
    return os.str();
}

}  // namespace gcrp
