#pragma once

// Text format for factored specifications.
//
//   discount: 0.9
//   variables:
//     type: visit ask
//     hidden: normal silent
//   actions: ask-type declare-visit ...
//   observations: yes no ...
//   start:
//     type: 0.5 0.5
//     hidden: 1 0
//   tnet repair: ask-type declare-visit      # actions sharing this net
//     cpt type | type                        # child | parents (pre-state)
//       visit : 1 0                          # parent values : child distribution
//       ask : 0 1
//     cpt hidden |
//       : 0.9 0.1
//   onet confirm: declare-visit
//     cpt | type hidden                      # parents are post-state variables
//       visit normal : 0.9 0.1 ...           # distribution over observations
//   categories: declare other                # optional reward category order
//   reward:
//     declare-visit : * -1 declare           # action : condition value [category]
//     * : type=ask hidden=normal 5
//
// Every parent assignment must appear exactly once in a cpt block.

#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pomdp/factored.hpp"
#include "pomdp/io.hpp"
#include "pomdp/text.hpp"

namespace pomdp {

namespace detail {

class FactoredParser {
public:
    explicit FactoredParser(std::string_view text) : lines_(text) {}

    FactoredSpec parse() {
        std::size_t no = 0;
        std::string_view line;
        while (lines_.next(no, line)) {
            if (text::starts_with_word(line, "discount")) {
                finish_cpt();
                section_ = Section::None;
                spec_.discount = text::parse_double(text::trim(text::split_once(line, ':').second), no);
                have_discount_ = true;
            } else if (text::starts_with_word(line, "variables")) {
                finish_cpt();
                section_ = Section::Variables;
            } else if (text::starts_with_word(line, "actions")) {
                finish_cpt();
                section_ = Section::None;
                for (auto tok : text::split_ws(text::split_once(line, ':').second)) spec_.actions.emplace_back(tok);
            } else if (text::starts_with_word(line, "observations")) {
                finish_cpt();
                section_ = Section::None;
                for (auto tok : text::split_ws(text::split_once(line, ':').second))
                    spec_.observations.emplace_back(tok);
            } else if (text::starts_with_word(line, "categories")) {
                finish_cpt();
                section_ = Section::None;
                for (auto tok : text::split_ws(text::split_once(line, ':').second))
                    spec_.category_order.emplace_back(tok);
            } else if (text::starts_with_word(line, "start")) {
                finish_cpt();
                section_ = Section::Start;
                spec_.start.assign(spec_.variables.size(), {});
            } else if (text::starts_with_word(line, "tnet") || text::starts_with_word(line, "onet")) {
                finish_cpt();
                const bool is_t = line.substr(0, 4) == "tnet";
                auto [head, acts] = text::split_once(line.substr(4), ':');
                const std::string name(text::trim(head));
                if (name.empty()) throw ParseError(no, "net needs a name");
                std::vector<std::string> actions;
                for (auto tok : text::split_ws(acts)) actions.emplace_back(tok);
                if (is_t) {
                    spec_.transition_nets.push_back({name, actions, {}});
                    section_ = Section::TNet;
                } else {
                    spec_.observation_nets.push_back({name, actions, {}});
                    section_ = Section::ONet;
                    onet_has_cpt_ = false;
                }
            } else if (text::starts_with_word(line, "cpt")) {
                finish_cpt();
                begin_cpt(line.substr(3), no);
            } else if (text::starts_with_word(line, "reward")) {
                finish_cpt();
                section_ = Section::Reward;
            } else {
                body_line(line, no);
            }
        }
        finish_cpt();
        if (!have_discount_) throw ParseError(no, "missing discount");
        for (std::size_t v = 0; v < spec_.start.size(); ++v) {
            if (spec_.start[v].empty()) throw ParseError(no, "start: no marginal for '" + spec_.variables[v].name + "'");
        }
        return std::move(spec_);
    }

private:
    enum class Section { None, Variables, Start, TNet, ONet, Reward };

    void body_line(std::string_view line, std::size_t no) {
        switch (section_) {
        case Section::Variables: {
            auto [name, vals] = text::split_once(line, ':');
            StateVariable v{std::string(text::trim(name)), {}};
            for (auto tok : text::split_ws(vals)) v.domain.emplace_back(tok);
            if (v.name.empty() || v.domain.empty()) throw ParseError(no, "variable needs a name and values");
            spec_.variables.push_back(std::move(v));
            break;
        }
        case Section::Start: {
            auto [name, vals] = text::split_once(line, ':');
            const std::size_t v = lookup_var(text::trim(name), no);
            std::vector<double> probs;
            for (auto tok : text::split_ws(vals)) probs.push_back(text::parse_double(tok, no));
            if (probs.size() != spec_.variables[v].domain.size()) {
                throw ParseError(no, "start: wrong number of probabilities for '" + spec_.variables[v].name + "'");
            }
            spec_.start[v] = std::move(probs);
            break;
        }
        case Section::TNet:
        case Section::ONet:
            if (!cpt_) throw ParseError(no, "expected 'cpt'");
            cpt_row(line, no);
            break;
        case Section::Reward: reward_line(line, no); break;
        case Section::None: throw ParseError(no, "unexpected line '" + std::string(line) + "'");
        }
    }

    std::size_t lookup_var(std::string_view name, std::size_t no) const {
        for (std::size_t i = 0; i < spec_.variables.size(); ++i) {
            if (spec_.variables[i].name == name) return i;
        }
        throw ParseError(no, "unknown variable '" + std::string(name) + "'");
    }

    std::size_t lookup_value(std::size_t var, std::string_view value, std::size_t no) const {
        const auto& d = spec_.variables[var].domain;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i] == value) return i;
        }
        throw ParseError(no, "variable '" + spec_.variables[var].name + "' has no value '" + std::string(value) + "'");
    }

    void begin_cpt(std::string_view rest, std::size_t no) {
        auto [child, parents] = text::split_once(rest, '|');
        child = text::trim(child);
        Cpt cpt;
        for (auto tok : text::split_ws(parents)) cpt.parents.push_back(lookup_var(tok, no));
        if (section_ == Section::TNet) {
            if (spec_.transition_nets.empty()) throw ParseError(no, "cpt outside a net");
            const std::size_t v = lookup_var(child, no);
            auto& net = spec_.transition_nets.back();
            if (v != net.cpts.size()) throw ParseError(no, "transition cpts must follow variable order");
            cpt.child_size = spec_.variables[v].domain.size();
        } else if (section_ == Section::ONet) {
            if (!child.empty()) throw ParseError(no, "observation cpt has no child name");
            if (onet_has_cpt_) throw ParseError(no, "observation net has a single cpt");
            cpt.child_size = spec_.observations.size();
        } else {
            throw ParseError(no, "cpt outside a net");
        }
        std::size_t rows = 1;
        for (std::size_t p : cpt.parents) rows *= spec_.variables[p].domain.size();
        cpt.table.assign(rows * cpt.child_size, 0.0);
        seen_.assign(rows, 0);
        cpt_ = std::move(cpt);
        cpt_line_ = no;
    }

    void cpt_row(std::string_view line, std::size_t no) {
        auto [key, vals] = text::split_once(line, ':');
        const auto keys = text::split_ws(key);
        if (keys.size() != cpt_->parents.size()) throw ParseError(no, "wrong number of parent values");
        std::size_t row = 0;
        for (std::size_t i = 0; i < keys.size(); ++i) {
            const std::size_t p = cpt_->parents[i];
            row = row * spec_.variables[p].domain.size() + lookup_value(p, keys[i], no);
        }
        if (seen_[row]) throw ParseError(no, "parent assignment listed twice");
        seen_[row] = 1;
        const auto toks = text::split_ws(vals);
        if (toks.size() != cpt_->child_size) throw ParseError(no, "row needs " + std::to_string(cpt_->child_size) + " probabilities");
        for (std::size_t c = 0; c < toks.size(); ++c) cpt_->table[row * cpt_->child_size + c] = text::parse_double(toks[c], no);
    }

    void finish_cpt() {
        if (!cpt_) return;
        for (char s : seen_) {
            if (!s) throw ParseError(cpt_line_, "cpt does not list every parent assignment");
        }
        if (section_ == Section::TNet) {
            spec_.transition_nets.back().cpts.push_back(std::move(*cpt_));
        } else {
            spec_.observation_nets.back().cpt = std::move(*cpt_);
            onet_has_cpt_ = true;
        }
        cpt_.reset();
    }

    void reward_line(std::string_view line, std::size_t no) {
        auto [act, rest] = text::split_once(line, ':');
        RewardEntry e;
        e.action = std::string(text::trim(act));
        auto toks = text::split_ws(rest);
        if (toks.empty()) throw ParseError(no, "reward entry needs a condition and a value");
        std::size_t i = 0;
        if (toks[0] == "*") {
            i = 1;
        } else {
            while (i < toks.size() && toks[i].find('=') != std::string_view::npos) {
                auto [var, val] = text::split_once(toks[i], '=');
                const std::size_t v = lookup_var(var, no);
                e.condition.emplace_back(v, lookup_value(v, val, no));
                ++i;
            }
        }
        if (i >= toks.size()) throw ParseError(no, "reward entry is missing its value");
        e.value = text::parse_double(toks[i], no);
        if (i + 1 < toks.size()) e.category = std::string(toks[i + 1]);
        if (i + 2 < toks.size()) throw ParseError(no, "trailing tokens in reward entry");
        if (e.action != "*" && std::find(spec_.actions.begin(), spec_.actions.end(), e.action) == spec_.actions.end()) {
            throw ParseError(no, "unknown action '" + e.action + "'");
        }
        spec_.rewards.push_back(std::move(e));
    }

    text::Lines lines_;
    FactoredSpec spec_;
    Section section_ = Section::None;
    std::optional<Cpt> cpt_;
    std::vector<char> seen_;
    std::size_t cpt_line_ = 0;
    bool onet_has_cpt_ = false;
    bool have_discount_ = false;
};

inline void write_cpt(std::ostream& os, const FactoredSpec& spec, const Cpt& cpt) {
    const std::size_t rows = cpt.row_count(spec.radix());
    std::vector<std::size_t> digits(cpt.parents.size());
    for (std::size_t r = 0; r < rows; ++r) {
        std::size_t rem = r;
        for (std::size_t i = cpt.parents.size(); i-- > 0;) {
            const std::size_t size = spec.variables[cpt.parents[i]].domain.size();
            digits[i] = rem % size;
            rem /= size;
        }
        os << "    ";
        for (std::size_t i = 0; i < digits.size(); ++i) {
            os << (i ? " " : "") << spec.variables[cpt.parents[i]].domain[digits[i]];
        }
        os << (digits.empty() ? ":" : " :");
        for (std::size_t c = 0; c < cpt.child_size; ++c) os << ' ' << text::format_double(cpt.at(r, c));
        os << '\n';
    }
}

} // namespace detail

inline FactoredSpec parse_factored_spec(std::string_view text) { return detail::FactoredParser(text).parse(); }

inline std::string write_factored_spec(const FactoredSpec& spec) {
    std::ostringstream os;
    os << "discount: " << text::format_double(spec.discount) << '\n';
    os << "variables:\n";
    for (const auto& v : spec.variables) {
        os << "  " << v.name << ':';
        for (const auto& d : v.domain) os << ' ' << d;
        os << '\n';
    }
    os << "actions:";
    for (const auto& a : spec.actions) os << ' ' << a;
    os << "\nobservations:";
    for (const auto& o : spec.observations) os << ' ' << o;
    os << '\n';
    if (!spec.start.empty()) {
        os << "start:\n";
        for (std::size_t v = 0; v < spec.variables.size(); ++v) {
            os << "  " << spec.variables[v].name << ':';
            for (double p : spec.start[v]) os << ' ' << text::format_double(p);
            os << '\n';
        }
    }
    for (const auto& net : spec.transition_nets) {
        os << "tnet " << net.name << ':';
        for (const auto& a : net.actions) os << ' ' << a;
        os << '\n';
        for (std::size_t v = 0; v < net.cpts.size(); ++v) {
            os << "  cpt " << spec.variables[v].name << " |";
            for (std::size_t p : net.cpts[v].parents) os << ' ' << spec.variables[p].name;
            os << '\n';
            detail::write_cpt(os, spec, net.cpts[v]);
        }
    }
    for (const auto& net : spec.observation_nets) {
        os << "onet " << net.name << ':';
        for (const auto& a : net.actions) os << ' ' << a;
        os << "\n  cpt |";
        for (std::size_t p : net.cpt.parents) os << ' ' << spec.variables[p].name;
        os << '\n';
        detail::write_cpt(os, spec, net.cpt);
    }
    if (!spec.category_order.empty()) {
        os << "categories:";
        for (const auto& c : spec.category_order) os << ' ' << c;
        os << '\n';
    }
    if (!spec.rewards.empty()) {
        os << "reward:\n";
        for (const auto& e : spec.rewards) {
            os << "  " << e.action << " :";
            if (e.condition.empty()) os << " *";
            for (const auto& [var, val] : e.condition) {
                os << ' ' << spec.variables[var].name << '=' << spec.variables[var].domain[val];
            }
            os << ' ' << text::format_double(e.value);
            if (!e.category.empty()) os << ' ' << e.category;
            os << '\n';
        }
    }
    return os.str();
}

/// True when the text declares factored `variables`; otherwise it is a flat model.
inline bool is_factored_text(std::string_view content) {
    text::Lines lines(content);
    std::size_t no = 0;
    std::string_view line;
    while (lines.next(no, line)) {
        if (text::starts_with_word(line, "variables")) return true;
    }
    return false;
}

/// Parses either model format; factored text is compiled.
inline PomdpModel parse_any_model(std::string_view content) {
    return is_factored_text(content) ? compile_factored(parse_factored_spec(content)) : parse_model_file(content);
}

} // namespace pomdp
