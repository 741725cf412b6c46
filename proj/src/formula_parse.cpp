#include "fodef/error.hpp"
#include "fodef/formula.hpp"

#include <cctype>
#include <map>
#include <regex>
#include <set>

namespace fodef {

std::string var_name(Var v) { return "x" + std::to_string(v); }

namespace {

struct SExpr {
    bool is_list = false;
    std::string atom;
    std::size_t pos = 0;
    std::vector<SExpr> items;
};

class Reader {
public:
    explicit Reader(const std::string& text) : s_(text) {}

    SExpr read_top()
    {
        skip();
        if (i_ >= s_.size())
            fail(i_, "empty input");
        SExpr e = read();
        skip();
        if (i_ < s_.size())
            fail(i_, "trailing input");
        return e;
    }

    [[noreturn]] void fail(std::size_t pos, const std::string& what)
    {
        input_error("syntax", "syntax error at position " + std::to_string(pos) + ": " + what);
    }

private:
    void skip()
    {
        while (i_ < s_.size()) {
            if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
                ++i_;
            } else if (s_[i_] == ';' || s_[i_] == '#') {
                while (i_ < s_.size() && s_[i_] != '\n')
                    ++i_;
            } else {
                break;
            }
        }
    }

    SExpr read()
    {
        skip();
        if (i_ >= s_.size())
            fail(i_, "unexpected end of input");
        SExpr e;
        e.pos = i_;
        if (s_[i_] == '(') {
            e.is_list = true;
            ++i_;
            for (;;) {
                skip();
                if (i_ >= s_.size())
                    fail(i_, "unexpected end of input");
                if (s_[i_] == ')') {
                    ++i_;
                    break;
                }
                e.items.push_back(read());
            }
            return e;
        }
        if (s_[i_] == ')')
            fail(i_, "unexpected ')'");
        while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' && s_[i_] != ')')
            e.atom.push_back(s_[i_++]);
        return e;
    }

    const std::string& s_;
    std::size_t i_ = 0;
};

const std::map<std::string, int>& head_arity()
{
    // -1: any number of formula arguments.
    static const std::map<std::string, int> table = {
        {"adj", 2}, {"=", 2}, {"not", 1}, {"and", -1}, {"or", -1},
        {"exists", 2}, {"forall", 2}, {"implies", 2}, {"iff", 2},
        {"existsU", 2}, {"existsIn", 3}, {"forallIn", 3},
    };
    return table;
}

class Converter {
public:
    Converter(Reader& reader, const SExpr& root, ParseOptions opts) : reader_(reader), opts_(opts)
    {
        collect_names(root);
        // Names of the form x<digits> keep their index; others follow.
        static const std::regex indexed("x([0-9]+)");
        Var next = 0;
        for (const auto& name : names_) {
            std::smatch m;
            if (std::regex_match(name, m, indexed))
                next = std::max(next, static_cast<Var>(std::stoi(m[1])) + 1);
        }
        for (const auto& name : order_) {
            std::smatch m;
            if (std::regex_match(name, m, indexed))
                index_[name] = std::stoi(m[1]);
        }
        for (const auto& name : order_)
            if (!index_.count(name))
                index_[name] = next++;
        fresh_ = next;
    }

    Formula convert(const SExpr& e)
    {
        if (!e.is_list)
            reader_.fail(e.pos, "expected a parenthesised formula, got '" + e.atom + "'");
        if (e.items.empty() || e.items[0].is_list)
            reader_.fail(e.pos, "expected an operator");
        const std::string& head = e.items[0].atom;
        auto it = head_arity().find(head);
        if (it == head_arity().end())
            reader_.fail(e.items[0].pos, "unknown operator '" + head + "'");
        std::size_t argc = e.items.size() - 1;
        if (it->second >= 0 && argc != static_cast<std::size_t>(it->second))
            input_error("arity", "arity error at position " + std::to_string(e.pos) + ": '" + head + "' takes "
                + std::to_string(it->second) + " arguments, got " + std::to_string(argc));

        if (head == "adj" || head == "=") {
            Var x = use(e.items[1]);
            Var y = use(e.items[2]);
            return head == "adj" ? adj(x, y) : eq(x, y);
        }
        if (head == "not")
            return neg(convert(e.items[1]));
        if (head == "and" || head == "or") {
            std::vector<Formula> kids;
            for (std::size_t i = 1; i < e.items.size(); ++i)
                kids.push_back(convert(e.items[i]));
            return make_nary(head == "and" ? Kind::And : Kind::Or, std::move(kids));
        }
        if (head == "implies")
            return make_nary(Kind::Or, {neg(convert(e.items[1])), convert(e.items[2])});
        if (head == "iff") {
            Formula f = convert(e.items[1]);
            Formula g = convert(e.items[2]);
            return make_nary(Kind::And, {make_nary(Kind::Or, {neg(f), g}), make_nary(Kind::Or, {neg(g), f})});
        }
        Var x = bind(e.items[1]);
        bound_.push_back(x);
        Formula out;
        if (head == "exists" || head == "forall") {
            Formula body = convert(e.items[2]);
            out = head == "exists" ? exists(x, body) : forall(x, body);
        } else if (head == "existsU") {
            Formula body = convert(e.items[2]);
            out = make_nary(Kind::And, {exists(x, body), forall(x, forall(fresh_, make_nary(Kind::Or,
                {neg(body), neg(substitute(body, x, fresh_)), eq(x, fresh_)})))});
            ++fresh_;
        } else {
            Formula guard = convert(e.items[2]);
            Formula body = convert(e.items[3]);
            out = head == "existsIn" ? exists(x, make_nary(Kind::And, {guard, body}))
                                     : forall(x, make_nary(Kind::Or, {neg(guard), body}));
        }
        bound_.pop_back();
        return out;
    }

private:
    void note(const SExpr& v)
    {
        if (v.is_list)
            reader_.fail(v.pos, "expected a variable");
        if (names_.insert(v.atom).second)
            order_.push_back(v.atom);
    }

    void collect_names(const SExpr& e)
    {
        if (!e.is_list || e.items.empty() || e.items[0].is_list)
            return;
        const std::string& head = e.items[0].atom;
        if (head == "adj" || head == "=") {
            for (std::size_t i = 1; i < e.items.size(); ++i)
                note(e.items[i]);
            return;
        }
        std::size_t start = 1;
        if ((head == "exists" || head == "forall" || head == "existsU" || head == "existsIn" || head == "forallIn")
            && e.items.size() > 1) {
            note(e.items[1]);
            start = 2;
        }
        for (std::size_t i = start; i < e.items.size(); ++i)
            collect_names(e.items[i]);
    }

    Var bind(const SExpr& v)
    {
        if (v.is_list)
            reader_.fail(v.pos, "expected a variable");
        return index_.at(v.atom);
    }

    Var use(const SExpr& v)
    {
        if (v.is_list)
            reader_.fail(v.pos, "expected a variable");
        Var x = index_.at(v.atom);
        if (!opts_.allow_free && std::find(bound_.begin(), bound_.end(), x) == bound_.end())
            input_error("unbound_variable", "unbound variable '" + v.atom + "' at position " + std::to_string(v.pos));
        return x;
    }

    Reader& reader_;
    ParseOptions opts_;
    std::set<std::string> names_;
    std::vector<std::string> order_;
    std::map<std::string, Var> index_;
    std::vector<Var> bound_;
    Var fresh_ = 0;
};

void render_to(const Formula& f, std::string& out)
{
    switch (f->kind) {
    case Kind::Adj:
        out += "(adj " + var_name(f->a) + " " + var_name(f->b) + ")";
        return;
    case Kind::Eq:
        out += "(= " + var_name(f->a) + " " + var_name(f->b) + ")";
        return;
    case Kind::Not:
        out += "(not ";
        render_to(f->kids[0], out);
        out += ")";
        return;
    case Kind::And:
    case Kind::Or:
        out += f->kind == Kind::And ? "(and" : "(or";
        for (const auto& k : f->kids) {
            out += " ";
            render_to(k, out);
        }
        out += ")";
        return;
    case Kind::Exists:
    case Kind::Forall:
        out += f->kind == Kind::Exists ? "(exists " : "(forall ";
        out += var_name(f->a) + " ";
        render_to(f->kids[0], out);
        out += ")";
        return;
    }
}

} // namespace

Formula parse(const std::string& text, ParseOptions opts)
{
    Reader reader(text);
    SExpr root = reader.read_top();
    Converter conv(reader, root, opts);
    return conv.convert(root);
}

std::string render(const Formula& f)
{
    std::string out;
    render_to(f, out);
    return out;
}

} // namespace fodef
