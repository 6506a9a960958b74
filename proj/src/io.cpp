#include "xpl/io.hpp"

#include "xpl/errors.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace xpl {

namespace {

struct Word {
    std::string text;
    std::size_t column;
};

struct Line {
    std::size_t number;
    std::vector<Word> words;

    [[noreturn]] void fail(const std::string& msg, std::size_t word = 0) const {
        std::size_t col = word < words.size() ? words[word].column : 1;
        throw ParseError(msg, number, col);
    }
    const std::string& at(std::size_t i) const {
        if (i >= words.size()) fail("missing field " + std::to_string(i + 1), words.size() - 1);
        return words[i].text;
    }
    Rational prob(std::size_t i) const {
        try {
            return Rational::parse(at(i));
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            fail("bad probability '" + at(i) + "'", i);
        }
    }
    std::size_t index(std::size_t i) const {
        const std::string& w = at(i);
        if (w.empty() || w.find_first_not_of("0123456789") != std::string::npos) fail("expected an index", i);
        return std::stoul(w);
    }
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
            std::size_t start = i;
            while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
            if (i > start) line.words.push_back({std::string(raw.substr(start, i - start)), start + 1});
        }
        if (!line.words.empty()) out.push_back(std::move(line));
        if (end == text.size()) break;
        pos = end + 1;
    }
    return out;
}

}  // namespace

Plts read_plts(std::string_view text) {
    Plts m;
    for (const auto& line : split_lines(text)) {
        const std::string& head = line.at(0);
        if (head == "states") {
            for (std::size_t i = 1; i < line.words.size(); ++i) {
                if (m.find_state(line.words[i].text)) line.fail("duplicate state " + line.words[i].text, i);
                m.add_state(line.words[i].text);
            }
        } else if (head == "label") {
            auto s = m.find_state(line.at(1));
            if (!s) line.fail("unknown state " + line.at(1), 1);
            for (std::size_t i = 2; i < line.words.size(); ++i) m.add_proposition(*s, line.words[i].text);
        } else {
            if (line.words.size() != 5) line.fail("expected '<from> <action> <choice> <to> <prob>'");
            auto from = m.find_state(line.at(0));
            if (!from) line.fail("unknown state " + line.at(0), 0);
            auto to = m.find_state(line.at(3));
            if (!to) line.fail("unknown state " + line.at(3), 3);
            m.add_transition(*from, line.at(1), static_cast<ChoiceIndex>(line.index(2)), *to, line.prob(4));
        }
    }
    return m;
}

std::string write_plts(const Plts& m) {
    std::ostringstream os;
    os << "states";
    for (std::uint32_t s = 0; s < m.num_states(); ++s) os << ' ' << m.name(StateId{s});
    os << '\n';
    for (std::uint32_t s = 0; s < m.num_states(); ++s) {
        if (m.props(StateId{s}).empty()) continue;
        os << "label " << m.name(StateId{s});
        for (const auto& p : m.props(StateId{s})) os << ' ' << p;
        os << '\n';
    }
    for (const auto& t : m.transitions())
        os << m.name(t.from) << ' ' << t.action << ' ' << t.choice << ' ' << m.name(t.to) << ' ' << t.prob << '\n';
    return os.str();
}

Mdp read_mdp(std::string_view text) {
    Mdp m;
    std::map<std::string, std::size_t> index;
    auto state = [&](const Line& line, std::size_t i) {
        auto it = index.find(line.at(i));
        if (it == index.end()) line.fail("unknown state " + line.at(i), i);
        return it->second;
    };
    for (const auto& line : split_lines(text)) {
        const std::string& head = line.at(0);
        if (head == "states") {
            for (std::size_t i = 1; i < line.words.size(); ++i) {
                if (index.count(line.words[i].text)) line.fail("duplicate state " + line.words[i].text, i);
                index[line.words[i].text] = m.add_state(line.words[i].text);
            }
        } else if (head == "label") {
            std::size_t s = state(line, 1);
            for (std::size_t i = 2; i < line.words.size(); ++i) m.labels[s].insert(line.words[i].text);
        } else if (head == "action") {
            std::size_t s = state(line, 1);
            if (line.words.size() < 5 || line.words.size() % 2 == 0)
                line.fail("expected 'action <state> <name> <to> <prob> ...'");
            std::vector<std::pair<std::size_t, Rational>> dist;
            for (std::size_t i = 3; i + 1 < line.words.size(); i += 2) dist.emplace_back(state(line, i), line.prob(i + 1));
            m.add_action(s, line.at(2), std::move(dist));
        } else {
            line.fail("unknown record '" + head + "'");
        }
    }
    return m;
}

Rmdp read_rmdp(std::string_view text) {
    Rmdp r;
    RmdpComponent* cur = nullptr;
    auto vertex = [](const std::string& w) {
        auto dot = w.find('.');
        if (dot == std::string::npos) return RmdpVertex{{}, w};
        return RmdpVertex{w.substr(0, dot), w.substr(dot + 1)};
    };
    for (const auto& line : split_lines(text)) {
        const std::string& head = line.at(0);
        if (head == "component") {
            if (cur) line.fail("missing 'end' before a new component");
            r.components.emplace_back();
            cur = &r.components.back();
            cur->name = line.at(1);
            continue;
        }
        if (!cur) line.fail("record outside a component");
        auto rest = [&] {
            std::vector<std::string> out;
            for (std::size_t i = 1; i < line.words.size(); ++i) {
                if (line.words[i].text.find('.') != std::string::npos) line.fail("node names may not contain '.'", i);
                out.push_back(line.words[i].text);
            }
            return out;
        };
        if (head == "end") {
            cur = nullptr;
        } else if (head == "nodes") {
            for (auto& n : rest()) cur->nodes.push_back(n);
        } else if (head == "entries") {
            for (auto& n : rest()) cur->entries.push_back(n);
        } else if (head == "exits") {
            for (auto& n : rest()) cur->exits.push_back(n);
        } else if (head == "box") {
            cur->boxes.emplace_back(line.at(1), line.at(2));
        } else if (head == "player") {
            std::size_t p = line.index(2);
            cur->player[vertex(line.at(1))] = static_cast<int>(p);
        } else if (head == "edge") {
            if (line.words.size() != 3 && line.words.size() != 4) line.fail("expected 'edge <from> <to> [<prob>]'");
            Rational p = line.words.size() == 4 ? line.prob(3) : Rational(1);
            cur->edges.push_back({vertex(line.at(1)), vertex(line.at(2)), p});
        } else {
            line.fail("unknown record '" + head + "'");
        }
    }
    if (cur) throw ParseError("component " + cur->name + " is missing 'end'");
    return r;
}

BranchingProcess read_bp(std::string_view text) {
    BranchingProcess bp;
    std::map<std::string, std::size_t> index;
    for (const auto& line : split_lines(text)) {
        const std::string& head = line.at(0);
        if (head == "type") {
            if (index.count(line.at(1))) line.fail("duplicate type " + line.at(1), 1);
            index[line.at(1)] = bp.types.size();
            BpType t;
            t.name = line.at(1);
            for (std::size_t i = 2; i < line.words.size(); ++i) t.props.insert(line.words[i].text);
            bp.types.push_back(std::move(t));
        } else if (head == "rule") {
            auto it = index.find(line.at(1));
            if (it == index.end()) line.fail("unknown type " + line.at(1), 1);
            std::size_t mode = line.index(2);
            Rational p = line.prob(3);
            if (line.at(4) != "->") line.fail("expected '->'", 4);
            BpRule rule{p, {}};
            for (std::size_t i = 5; i < line.words.size(); ++i) rule.children.push_back(line.words[i].text);
            auto& modes = bp.types[it->second].modes;
            if (mode > modes.size()) line.fail("mode indices must be dense", 2);
            if (mode == modes.size()) modes.emplace_back();
            modes[mode].push_back(std::move(rule));
        } else {
            line.fail("unknown record '" + head + "'");
        }
    }
    return bp;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace xpl
