#pragma once

// Minimal arithmetic expressions in one variable for the CLI's demo maps:
// number literals, x, + - * /, unary minus, parentheses.

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pacontract {

class MapExpr {
public:
    /// Throws std::invalid_argument on any syntax error.
    static MapExpr parse(std::string_view source) {
        Parser parser{source, 0};
        MapExpr expr;
        expr.root_ = parser.parse_sum(expr.nodes_);
        parser.skip_ws();
        if (parser.pos != parser.src.size())
            throw std::invalid_argument("unexpected trailing input in expression at position " +
                                        std::to_string(parser.pos));
        return expr;
    }

    double operator()(double x) const { return eval(root_, x); }

private:
    enum class Kind { constant, variable, add, sub, mul, div, neg };
    struct Node {
        Kind kind;
        double value = 0.0;
        int lhs = -1;
        int rhs = -1;
    };

    struct Parser {
        std::string_view src;
        std::size_t pos;

        void skip_ws() {
            while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
        }
        bool eat(char c) {
            skip_ws();
            if (pos < src.size() && src[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }

        int parse_sum(std::vector<Node>& nodes) {
            int lhs = parse_product(nodes);
            for (;;) {
                if (eat('+')) lhs = link(nodes, Kind::add, lhs, parse_product(nodes));
                else if (eat('-')) lhs = link(nodes, Kind::sub, lhs, parse_product(nodes));
                else return lhs;
            }
        }

        int parse_product(std::vector<Node>& nodes) {
            int lhs = parse_atom(nodes);
            for (;;) {
                if (eat('*')) lhs = link(nodes, Kind::mul, lhs, parse_atom(nodes));
                else if (eat('/')) lhs = link(nodes, Kind::div, lhs, parse_atom(nodes));
                else return lhs;
            }
        }

        int parse_atom(std::vector<Node>& nodes) {
            skip_ws();
            if (pos >= src.size()) throw std::invalid_argument("expression ended unexpectedly");
            const char c = src[pos];
            if (c == '(') {
                ++pos;
                const int inner = parse_sum(nodes);
                if (!eat(')')) throw std::invalid_argument("missing closing parenthesis");
                return inner;
            }
            if (c == '-') {
                ++pos;
                return link(nodes, Kind::neg, parse_atom(nodes), -1);
            }
            if (c == 'x' || c == 'X') {
                ++pos;
                nodes.push_back({Kind::variable});
                return static_cast<int>(nodes.size()) - 1;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                std::size_t used = 0;
                double value = 0.0;
                try {
                    value = std::stod(std::string(src.substr(pos)), &used);
                } catch (const std::exception&) {
                    throw std::invalid_argument("malformed number at position " + std::to_string(pos));
                }
                pos += used;
                nodes.push_back({Kind::constant, value});
                return static_cast<int>(nodes.size()) - 1;
            }
            throw std::invalid_argument(std::string("unexpected character '") + c +
                                        "' at position " + std::to_string(pos));
        }

        static int link(std::vector<Node>& nodes, Kind kind, int lhs, int rhs) {
            nodes.push_back({kind, 0.0, lhs, rhs});
            return static_cast<int>(nodes.size()) - 1;
        }
    };

    double eval(int id, double x) const {
        const Node& node = nodes_[static_cast<std::size_t>(id)];
        switch (node.kind) {
            case Kind::constant: return node.value;
            case Kind::variable: return x;
            case Kind::add: return eval(node.lhs, x) + eval(node.rhs, x);
            case Kind::sub: return eval(node.lhs, x) - eval(node.rhs, x);
            case Kind::mul: return eval(node.lhs, x) * eval(node.rhs, x);
            case Kind::div: return eval(node.lhs, x) / eval(node.rhs, x);
            case Kind::neg: return -eval(node.lhs, x);
        }
        return 0.0;
    }

    std::vector<Node> nodes_;
    int root_ = -1;
};

}  // namespace pacontract
