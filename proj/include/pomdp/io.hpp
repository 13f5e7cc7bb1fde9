#pragma once

// Flat model files, policy files and belief lists.
//
// Flat model grammar (line oriented, '#' starts a comment):
//   discount: <real>
//   states: <names...>
//   actions: <names...>
//   observations: <names...>
//   start: <|S| reals>                 (optional, uniform when absent)
//   T: <a> : <s> : <s'> <p>
//   O: <a> : <s'> : <o> <p>
//   R: <a> : <s> <r>
// The four header lines must precede the first entry. Unlisted T/O entries
// are 0 and unlisted R entries are 0; repeated entries overwrite.
//
// Policy grammar:
//   solver: <name>
//   epochs: <n>
//   dimension: <|S|>
//   actions: <names...>
//   vectors: <count>
//   <action name or -> <|S| reals>      (one line per vector)

#include <cstddef>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pomdp/error.hpp"
#include "pomdp/model.hpp"
#include "pomdp/text.hpp"
#include "pomdp/vector_set.hpp"

namespace pomdp {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
    if (!out) throw Error("failed writing '" + path + "'");
}

namespace detail {

inline std::size_t index_in(const std::vector<std::string>& names, std::string_view name, const char* kind,
                            std::size_t line) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return i;
    }
    throw ParseError(line, std::string("unknown ") + kind + " '" + std::string(name) + "'");
}

inline std::vector<std::string> name_list(std::string_view rest) {
    std::vector<std::string> out;
    for (auto tok : text::split_ws(rest)) out.emplace_back(tok);
    return out;
}

} // namespace detail

/// Parse a flat model and validate it; throws ParseError or ValidationError.
inline PomdpModel parse_model_file(std::string_view content) {
    std::vector<std::string> states, actions, observations;
    std::optional<double> discount;
    std::optional<std::vector<double>> start;
    std::vector<double> T, O, R;
    bool tables_ready = false;

    auto ensure_tables = [&](std::size_t line) {
        if (tables_ready) return;
        if (states.empty() || actions.empty() || observations.empty()) {
            throw ParseError(line, "states, actions and observations must be declared before entries");
        }
        T.assign(actions.size() * states.size() * states.size(), 0.0);
        O.assign(actions.size() * states.size() * observations.size(), 0.0);
        R.assign(actions.size() * states.size(), 0.0);
        tables_ready = true;
    };

    text::Lines lines(content);
    std::size_t no = 0;
    std::string_view line;
    std::size_t last_line = 0;
    while (lines.next(no, line)) {
        last_line = no;
        auto [key, rest] = text::split_once(line, ':');
        key = text::trim(key);
        if (key == "discount") {
            discount = text::parse_double(text::trim(rest), no);
        } else if (key == "states" || key == "actions" || key == "observations") {
            if (tables_ready) throw ParseError(no, std::string(key) + " declared after entries");
            auto names = detail::name_list(rest);
            if (names.empty()) throw ParseError(no, std::string(key) + " list is empty");
            (key == "states" ? states : key == "actions" ? actions : observations) = std::move(names);
        } else if (key == "start") {
            std::vector<double> p;
            for (auto tok : text::split_ws(rest)) p.push_back(text::parse_double(tok, no));
            start = std::move(p);
        } else if (key == "T" || key == "O") {
            ensure_tables(no);
            const auto parts = text::split_char(rest, ':');
            if (parts.size() != 3) throw ParseError(no, "expected '" + std::string(key) + ": a : x : y p'");
            const auto tail = text::split_ws(parts[2]);
            if (tail.size() != 2) throw ParseError(no, "expected a target name and a probability");
            const std::size_t a = detail::index_in(actions, parts[0], "action", no);
            const std::size_t s = detail::index_in(states, parts[1], "state", no);
            const double p = text::parse_double(tail[1], no);
            if (key == "T") {
                const std::size_t s2 = detail::index_in(states, tail[0], "state", no);
                T[(a * states.size() + s) * states.size() + s2] = p;
            } else {
                const std::size_t o = detail::index_in(observations, tail[0], "observation", no);
                O[(a * states.size() + s) * observations.size() + o] = p;
            }
        } else if (key == "R") {
            ensure_tables(no);
            const auto parts = text::split_char(rest, ':');
            if (parts.size() != 2) throw ParseError(no, "expected 'R: a : s r'");
            const auto tail = text::split_ws(parts[1]);
            if (tail.size() != 2) throw ParseError(no, "expected a state name and a reward");
            const std::size_t a = detail::index_in(actions, parts[0], "action", no);
            const std::size_t s = detail::index_in(states, tail[0], "state", no);
            R[a * states.size() + s] = text::parse_double(tail[1], no);
        } else {
            throw ParseError(no, "unknown key '" + std::string(key) + "'");
        }
    }
    ensure_tables(last_line);
    if (!discount) throw ParseError(last_line, "missing discount");
    std::vector<double> init = start ? *start : std::vector<double>(states.size(), 1.0 / static_cast<double>(states.size()));
    if (init.size() != states.size()) throw ParseError(last_line, "start has the wrong number of entries");
    PomdpModel m(std::move(states), std::move(actions), std::move(observations), std::move(T), std::move(O),
                 std::move(R), *discount, std::move(init));
    require_valid(m);
    return m;
}

/// Sparse flat serialization; zero T/O/R entries are omitted. Names must be
/// free of ':' and whitespace, or the file would not parse back.
inline std::string write_model_file(const PomdpModel& m) {
    for (const auto* names : {&m.states(), &m.actions(), &m.observations()}) {
        for (const auto& n : *names) {
            if (n.empty() || n.find_first_of(": \t\r\n") != std::string::npos) {
                throw ConfigError("name '" + n + "' cannot be written to a flat model file");
            }
        }
    }
    std::ostringstream os;
    auto join = [&os](const std::vector<std::string>& names) {
        for (const auto& n : names) os << ' ' << n;
        os << '\n';
    };
    os << "discount: " << text::format_double(m.discount()) << '\n';
    os << "states:";
    join(m.states());
    os << "actions:";
    join(m.actions());
    os << "observations:";
    join(m.observations());
    os << "start:";
    for (double p : m.initial_probs()) os << ' ' << text::format_double(p);
    os << '\n';
    const auto& S = m.states();
    const auto& A = m.actions();
    const auto& W = m.observations();
    for (std::size_t a = 0; a < A.size(); ++a) {
        for (std::size_t s = 0; s < S.size(); ++s) {
            for (std::size_t s2 = 0; s2 < S.size(); ++s2) {
                const double p = m.t(a, s, s2);
                if (p != 0.0) os << "T: " << A[a] << " : " << S[s] << " : " << S[s2] << ' ' << text::format_double(p) << '\n';
            }
        }
    }
    for (std::size_t a = 0; a < A.size(); ++a) {
        for (std::size_t s2 = 0; s2 < S.size(); ++s2) {
            for (std::size_t o = 0; o < W.size(); ++o) {
                const double p = m.o(a, s2, o);
                if (p != 0.0) os << "O: " << A[a] << " : " << S[s2] << " : " << W[o] << ' ' << text::format_double(p) << '\n';
            }
        }
    }
    for (std::size_t a = 0; a < A.size(); ++a) {
        for (std::size_t s = 0; s < S.size(); ++s) {
            const double r = m.r(a, s);
            if (r != 0.0) os << "R: " << A[a] << " : " << S[s] << ' ' << text::format_double(r) << '\n';
        }
    }
    return os.str();
}

/// Vector set plus the action names its labels refer to.
struct PolicyFile {
    VectorSet vectors;
    std::vector<std::string> actions;
};

inline std::string write_policy_file(const VectorSet& vs, const std::vector<std::string>& action_names) {
    std::ostringstream os;
    os << "solver: " << (vs.info().solver.empty() ? "unknown" : vs.info().solver) << '\n';
    os << "epochs: " << vs.info().epochs << '\n';
    os << "dimension: " << vs.dimension() << '\n';
    os << "actions:";
    for (const auto& a : action_names) os << ' ' << a;
    os << '\n';
    os << "vectors: " << vs.size() << '\n';
    for (const auto& v : vs) {
        if (v.action) {
            if (*v.action >= action_names.size()) throw DimensionError("policy: action label out of range");
            os << action_names[*v.action];
        } else {
            os << '-';
        }
        for (double x : v.values) os << ' ' << text::format_double(x);
        os << '\n';
    }
    return os.str();
}

inline PolicyFile parse_policy_file(std::string_view content) {
    text::Lines lines(content);
    std::size_t no = 0;
    std::string_view line;
    VectorSetInfo info;
    std::optional<std::size_t> dim, count;
    std::vector<std::string> actions;
    std::vector<AlphaVector> vectors;
    while (lines.next(no, line)) {
        if (!count) {
            auto [key, rest] = text::split_once(line, ':');
            key = text::trim(key);
            rest = text::trim(rest);
            if (key == "solver") info.solver = std::string(rest);
            else if (key == "epochs") info.epochs = text::parse_size(rest, no);
            else if (key == "dimension") dim = text::parse_size(rest, no);
            else if (key == "actions") actions = detail::name_list(rest);
            else if (key == "vectors") count = text::parse_size(rest, no);
            else throw ParseError(no, "unknown key '" + std::string(key) + "'");
            continue;
        }
        if (!dim) throw ParseError(no, "dimension must precede the vectors");
        const auto toks = text::split_ws(line);
        if (toks.size() != *dim + 1) throw ParseError(no, "vector needs a label and " + std::to_string(*dim) + " values");
        AlphaVector v;
        if (toks[0] != "-") v.action = detail::index_in(actions, toks[0], "action", no);
        v.values.reserve(*dim);
        for (std::size_t i = 1; i < toks.size(); ++i) v.values.push_back(text::parse_double(toks[i], no));
        vectors.push_back(std::move(v));
    }
    if (!count) throw ParseError(no, "missing 'vectors' header");
    if (vectors.size() != *count) throw ParseError(no, "expected " + std::to_string(*count) + " vectors");
    return {VectorSet(std::move(vectors), std::move(info)), std::move(actions)};
}

/// One belief per line, |S| whitespace-separated probabilities.
inline std::vector<BeliefState> parse_beliefs(std::string_view content) {
    text::Lines lines(content);
    std::size_t no = 0;
    std::string_view line;
    std::vector<BeliefState> out;
    while (lines.next(no, line)) {
        std::vector<double> p;
        for (auto tok : text::split_ws(line)) p.push_back(text::parse_double(tok, no));
        try {
            out.emplace_back(std::move(p));
        } catch (const ValidationError& e) {
            throw ParseError(no, e.what());
        }
        if (out.back().size() != out.front().size()) throw ParseError(no, "belief has a different dimension");
    }
    return out;
}

inline std::string write_beliefs(const std::vector<BeliefState>& beliefs) {
    std::ostringstream os;
    for (const auto& b : beliefs) {
        for (std::size_t i = 0; i < b.size(); ++i) os << (i ? " " : "") << text::format_double(b[i]);
        os << '\n';
    }
    return os.str();
}

} // namespace pomdp
