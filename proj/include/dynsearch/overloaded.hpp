#ifndef DYNSEARCH_OVERLOADED_HPP
#define DYNSEARCH_OVERLOADED_HPP

namespace dynsearch {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace dynsearch

#endif
