#include "cubei/kernels.hpp"

namespace cubei::kernels {

#ifdef CUBEI_HAVE_AVX2
namespace detail {
const Backend* avx2_backend_impl();
}
#endif

const Backend* avx2_backend() {
#ifdef CUBEI_HAVE_AVX2
    if (__builtin_cpu_supports("avx2")) return detail::avx2_backend_impl();
#endif
    return nullptr;
}

const Backend& active_backend() {
    static const Backend* chosen = [] {
        if (const Backend* b = avx2_backend()) return b;
        return &scalar_backend();
    }();
    return *chosen;
}

std::vector<const Backend*> available_backends() {
    std::vector<const Backend*> out{&scalar_backend()};
    if (const Backend* b = avx2_backend()) out.push_back(b);
    return out;
}

}  // namespace cubei::kernels
