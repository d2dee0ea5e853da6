#include "cubei/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <vector>

namespace cubei {

namespace {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Min, Max, Sqrt, Exp, Log };
    Op op;
    double value = 0.0;  // Const
    int var = 0;         // Var, 1-based
    std::vector<NodePtr> kids;
};

double eval_node(const Node& node, std::span<const double> x) {
    switch (node.op) {
        case Node::Op::Const: return node.value;
        case Node::Op::Var: return x[static_cast<std::size_t>(node.var - 1)];
        case Node::Op::Add: return eval_node(*node.kids[0], x) + eval_node(*node.kids[1], x);
        case Node::Op::Sub: return eval_node(*node.kids[0], x) - eval_node(*node.kids[1], x);
        case Node::Op::Mul: return eval_node(*node.kids[0], x) * eval_node(*node.kids[1], x);
        case Node::Op::Div: return eval_node(*node.kids[0], x) / eval_node(*node.kids[1], x);
        case Node::Op::Pow: return std::pow(eval_node(*node.kids[0], x), eval_node(*node.kids[1], x));
        case Node::Op::Neg: return -eval_node(*node.kids[0], x);
        case Node::Op::Min: {
            double m = eval_node(*node.kids[0], x);
            for (std::size_t i = 1; i < node.kids.size(); ++i) m = std::min(m, eval_node(*node.kids[i], x));
            return m;
        }
        case Node::Op::Max: {
            double m = eval_node(*node.kids[0], x);
            for (std::size_t i = 1; i < node.kids.size(); ++i) m = std::max(m, eval_node(*node.kids[i], x));
            return m;
        }
        case Node::Op::Sqrt: return std::sqrt(eval_node(*node.kids[0], x));
        case Node::Op::Exp: return std::exp(eval_node(*node.kids[0], x));
        case Node::Op::Log: return std::log(eval_node(*node.kids[0], x));
    }
    return 0.0;
}

void collect_vars(const Node& node, std::uint64_t& mask) {
    if (node.op == Node::Op::Var) mask |= 1ull << (node.var - 1);
    for (const auto& k : node.kids) collect_vars(*k, mask);
}

class Parser {
public:
    Parser(const std::string& text, int n) : text_(text), n_(n) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw spec_parse_error("expression error at position " + std::to_string(pos_) + ": " + what);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr expr() {
        NodePtr lhs = term();
        while (true) {
            if (eat('+'))
                lhs = binary(Node::Op::Add, lhs, term());
            else if (eat('-'))
                lhs = binary(Node::Op::Sub, lhs, term());
            else
                return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        while (true) {
            if (eat('*'))
                lhs = binary(Node::Op::Mul, lhs, unary());
            else if (eat('/'))
                lhs = binary(Node::Op::Div, lhs, unary());
            else
                return lhs;
        }
    }

    NodePtr unary() {
        if (eat('-')) {
            auto node = std::make_shared<Node>();
            node->op = Node::Op::Neg;
            node->kids.push_back(unary());
            return node;
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (eat('^')) return binary(Node::Op::Pow, base, unary());  // right-assoc
        return base;
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("expected an operand");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return ident();
        if (eat('(')) {
            NodePtr e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr number() {
        const char* begin = text_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("malformed number");
        pos_ += static_cast<std::size_t>(end - begin);
        auto node = std::make_shared<Node>();
        node->op = Node::Op::Const;
        node->value = v;
        return node;
    }

    NodePtr ident() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string name = text_.substr(start, pos_ - start);
        if (name.size() >= 2 && name[0] == 'x' && std::isdigit(static_cast<unsigned char>(name[1]))) {
            char* end = nullptr;
            const long idx = std::strtol(name.c_str() + 1, &end, 10);
            if (*end != '\0') fail("unknown identifier '" + name + "'");
            if (idx < 1 || idx > n_)
                fail("variable '" + name + "' out of range; expected x1..x" + std::to_string(n_));
            auto node = std::make_shared<Node>();
            node->op = Node::Op::Var;
            node->var = static_cast<int>(idx);
            return node;
        }
        Node::Op op;
        std::size_t min_args = 1, max_args = 1;
        if (name == "min") {
            op = Node::Op::Min;
            min_args = 2;
            max_args = 64;
        } else if (name == "max") {
            op = Node::Op::Max;
            min_args = 2;
            max_args = 64;
        } else if (name == "sqrt") {
            op = Node::Op::Sqrt;
        } else if (name == "exp") {
            op = Node::Op::Exp;
        } else if (name == "log") {
            op = Node::Op::Log;
        } else {
            fail("unknown identifier '" + name + "'");
        }
        if (!eat('(')) fail("expected '(' after '" + name + "'");
        auto node = std::make_shared<Node>();
        node->op = op;
        node->kids.push_back(expr());
        while (eat(',')) node->kids.push_back(expr());
        if (!eat(')')) fail("expected ')'");
        if (node->kids.size() < min_args || node->kids.size() > max_args)
            fail("'" + name + "' takes " + (min_args == max_args ? std::to_string(min_args) : "at least 2") +
                 " argument(s)");
        return node;
    }

    static NodePtr binary(Node::Op op, NodePtr a, NodePtr b) {
        auto node = std::make_shared<Node>();
        node->op = op;
        node->kids = {std::move(a), std::move(b)};
        return node;
    }

    const std::string& text_;
    int n_;
    std::size_t pos_ = 0;
};

}  // namespace

FunctionSpec parse_expression(const std::string& text, int n, bool smooth) {
    Parser parser(text, n);
    NodePtr root = parser.parse();
    std::uint64_t depends = 0;
    collect_vars(*root, depends);
    auto fn = [root](std::span<const double> x) { return eval_node(*root, x); };
    return FunctionSpec::black_box(n, fn, smooth, depends);
}

}  // namespace cubei
