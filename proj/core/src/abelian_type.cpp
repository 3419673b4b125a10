#include "tower2/abelian_type.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "tower2/error.hpp"

namespace tower2 {

AbelianType AbelianType::from_exponents(std::vector<int> exponents) {
    std::erase_if(exponents, [](int e) {
        if (e < 0) throw Error(ErrorKind::precondition, "negative exponent in abelian type");
        return e == 0;
    });
    std::sort(exponents.begin(), exponents.end());
    AbelianType t;
    t.exponents_ = std::move(exponents);
    return t;
}

AbelianType AbelianType::from_orders(std::initializer_list<std::uint64_t> orders) {
    return from_orders(std::vector<std::uint64_t>(orders));
}

AbelianType AbelianType::from_orders(const std::vector<std::uint64_t>& orders) {
    std::vector<int> exps;
    for (std::uint64_t o : orders) {
        if (o < 2 || (o & (o - 1)) != 0) {
            throw Error(ErrorKind::precondition, "abelian type entry is not a power of two >= 2: " + std::to_string(o));
        }
        exps.push_back(__builtin_ctzll(o));
    }
    return from_exponents(std::move(exps));
}

int AbelianType::order_log2() const { return std::accumulate(exponents_.begin(), exponents_.end(), 0); }

std::string AbelianType::to_string() const {
    if (exponents_.empty()) return "1";
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
        if (i) os << ", ";
        os << (std::uint64_t{1} << exponents_[i]);
    }
    os << ')';
    return os.str();
}

AbelianType AbelianType::parse(const std::string& text) {
    if (text == "1") return {};
    std::vector<std::uint64_t> orders;
    std::string body = text;
    if (body.size() < 2 || body.front() != '(' || body.back() != ')') {
        throw Error(ErrorKind::precondition, "bad abelian type text: " + text);
    }
    std::istringstream is(body.substr(1, body.size() - 2));
    std::string item;
    while (std::getline(is, item, ',')) {
        orders.push_back(std::stoull(item));
    }
    return from_orders(orders);
}

AbelianType type_2e(std::initializer_list<int> exponents) { return AbelianType::from_exponents(exponents); }

}  // namespace tower2
