#include "fodef/tm.hpp"

#include "fodef/error.hpp"

#include <algorithm>
#include <sstream>

namespace fodef {

const char* symbol_name(Symbol s)
{
    switch (s) {
    case Symbol::L:
        return "L";
    case Symbol::A:
        return "a";
    case Symbol::B:
        return "b";
    case Symbol::Blank:
        return "B";
    }
    return "?";
}

namespace {

const Symbol kSymbols[] = {Symbol::L, Symbol::A, Symbol::B, Symbol::Blank};

Symbol parse_symbol(const std::string& s, int line)
{
    for (Symbol x : kSymbols)
        if (s == symbol_name(x))
            return x;
    input_error("tm_syntax", "line " + std::to_string(line) + ": unknown symbol '" + s + "'");
}

int parse_state(const std::string& s, int line)
{
    if (s.size() < 2 || s[0] != 's' || !std::all_of(s.begin() + 1, s.end(), ::isdigit))
        input_error("tm_syntax", "line " + std::to_string(line) + ": bad state '" + s + "'");
    int v = std::stoi(s.substr(1));
    if (v < 1)
        input_error("tm_syntax", "line " + std::to_string(line) + ": states start at s1");
    return v;
}

} // namespace

TuringMachine::TuringMachine(int k, std::vector<Instruction> table) : k_(k), table_(std::move(table))
{
    if (k_ < 2)
        input_error("tm_invalid", "a machine needs at least two states");
    for (std::size_t i = 0; i < table_.size(); ++i) {
        const Instruction& in = table_[i];
        std::string where = "s" + std::to_string(in.state) + " " + symbol_name(in.read) + ": ";
        if (in.state < 1 || in.state >= k_)
            input_error("tm_invalid", where + "source state must be one of s1..s" + std::to_string(k_ - 1));
        if (in.next < 1 || in.next > k_)
            input_error("tm_invalid", where + "target state out of range");
        if (in.action == Action::Write && ((in.read == Symbol::L) != (in.write == Symbol::L)))
            input_error("tm_invalid", where + "L is written exactly when L is read");
        if (in.action == Action::Left && in.read == Symbol::L)
            input_error("tm_invalid", where + "no left move off the marker");
        for (std::size_t j = 0; j < i; ++j)
            if (table_[j].state == in.state && table_[j].read == in.read)
                input_error("tm_invalid", where + "duplicate instruction");
    }
}

const Instruction* TuringMachine::find(int state, Symbol read) const
{
    for (const auto& in : table_)
        if (in.state == state && in.read == read)
            return &in;
    return nullptr;
}

bool TuringMachine::complete() const { return static_cast<int>(table_.size()) == 4 * (k_ - 1); }

TuringMachine TuringMachine::completed() const
{
    std::vector<Instruction> t = table_;
    for (int s = 1; s < k_; ++s)
        for (Symbol a : kSymbols)
            if (!find(s, a))
                t.push_back({s, a, Action::Write, a, s});
    return TuringMachine(k_, std::move(t));
}

std::string TuringMachine::to_text() const
{
    std::ostringstream os;
    for (const auto& in : table_) {
        os << 's' << in.state << ' ' << symbol_name(in.read) << ' ';
        switch (in.action) {
        case Action::Write:
            os << "write " << symbol_name(in.write);
            break;
        case Action::Right:
            os << "right";
            break;
        case Action::Left:
            os << "left";
            break;
        }
        os << " s" << in.next << '\n';
    }
    return os.str();
}

TuringMachine parse_tm(const std::string& text, std::optional<int> k)
{
    std::istringstream is(text);
    std::string raw;
    std::vector<Instruction> table;
    int top = 0;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        if (auto h = raw.find('#'); h != std::string::npos)
            raw.resize(h);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string w; ls >> w;)
            tok.push_back(w);
        if (tok.empty())
            continue;
        Instruction in;
        in.state = parse_state(tok[0], line);
        if (tok.size() < 4)
            input_error("tm_syntax", "line " + std::to_string(line) + ": too few fields");
        in.read = parse_symbol(tok[1], line);
        if (tok[2] == "write") {
            if (tok.size() != 5)
                input_error("tm_syntax", "line " + std::to_string(line) + ": expected 's1 B write a s2'");
            in.action = Action::Write;
            in.write = parse_symbol(tok[3], line);
            in.next = parse_state(tok[4], line);
        } else if (tok[2] == "right" || tok[2] == "left") {
            if (tok.size() != 4)
                input_error("tm_syntax", "line " + std::to_string(line) + ": expected 's1 a right s2'");
            in.action = tok[2] == "right" ? Action::Right : Action::Left;
            in.next = parse_state(tok[3], line);
        } else {
            input_error("tm_syntax", "line " + std::to_string(line) + ": unknown action '" + tok[2] + "'");
        }
        top = std::max({top, in.state, in.next});
        table.push_back(in);
    }
    if (table.empty() && !k)
        input_error("tm_syntax", "empty machine");
    return TuringMachine(k ? *k : top, std::move(table));
}

std::variant<ComputationTrace, Timeout> run_tm(const TuringMachine& m, int max_steps)
{
    if (max_steps < 0)
        input_error("max_steps", "max_steps must be non-negative");
    ComputationTrace tr;
    Configuration c;
    c.tape = {Symbol::L, Symbol::Blank};
    tr.steps.push_back(c);
    for (int step = 0; c.state != m.states(); ++step) {
        if (step >= max_steps)
            return Timeout{max_steps};
        const Instruction* in = m.find(c.state, c.tape[c.head - 1]);
        if (!in)
            return Timeout{max_steps};  // stuck counts as never halting
        switch (in->action) {
        case Action::Write:
            c.tape[c.head - 1] = in->write;
            break;
        case Action::Right:
            ++c.head;
            if (c.head > static_cast<int>(c.tape.size()))
                c.tape.push_back(Symbol::Blank);
            break;
        case Action::Left:
            --c.head;
            break;
        }
        c.state = in->next;
        tr.steps.push_back(c);
    }
    tr.m = static_cast<int>(tr.steps.size()) - 1;
    tr.omega = static_cast<int>(c.tape.size());
    for (auto& s : tr.steps)
        s.tape.resize(tr.omega, Symbol::Blank);
    return tr;
}

nlohmann::json to_json(const ComputationTrace& tr)
{
    nlohmann::json steps = nlohmann::json::array();
    for (std::size_t t = 0; t < tr.steps.size(); ++t) {
        const auto& c = tr.steps[t];
        std::string tape;
        for (Symbol s : c.tape)
            tape += symbol_name(s);
        steps.push_back({{"time", t}, {"state", c.state}, {"head", c.head}, {"tape", tape}});
    }
    return {{"halted", true}, {"m", tr.m}, {"omega", tr.omega}, {"steps", steps}};
}

} // namespace fodef
