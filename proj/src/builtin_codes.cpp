#include "bfcert/builtin_codes.hpp"

#include <map>

#include "bfcert/errors.hpp"

namespace bfcert {

namespace {

struct BuiltinSpec {
    uint32_t p;
    Support s0;
    Support s1;
};

// Double-circulant benchmark codes, described by their first-column supports.
const std::map<std::string, BuiltinSpec>& builtin_table() {
    static const std::map<std::string, BuiltinSpec> table = {
        {"C0",
         {9851,
          {16, 364, 572, 1166, 1726, 2231, 2518, 2555, 2565, 3334, 3806, 3818, 4126,
           4590, 4852, 5425, 5502, 5536, 5576, 5880, 7923, 8296, 8788, 9035, 9179},
          {246, 406, 1732, 1855, 1871, 2254, 2297, 2320, 2474, 3333, 3513, 4042, 4511,
           5260, 6037, 6673, 6716, 7334, 7766, 7940, 8036, 8136, 8802, 8881, 9384}}},
        {"C1",
         {8779,
          {934, 1750, 3485, 4040, 4117, 4639, 4838, 4879, 5874, 5886, 6041, 6874, 7425},
          {2043, 2184, 2619, 2715, 3190, 3359, 4163, 4327, 4705, 5188, 5335, 7629, 7879}}},
        {"C2",
         {4801,
          {168,  229,  309,  405,  464,  507,  668,  888,  893,  908,  984,  1015,
           1143, 1178, 1299, 1311, 1368, 1380, 1433, 1478, 1675, 1728, 1800, 1936,
           2069, 2084, 2215, 2530, 2632, 2842, 3090, 3103, 3282, 3332, 3532, 3595,
           3657, 3882, 3919, 3929, 4077, 4138, 4160, 4654, 4698},
          {263,  271,  277,  369,  381,  641,  689,  754,  792,  935,  1153, 1415,
           1551, 1727, 1732, 1743, 1988, 2065, 2099, 2102, 2139, 2159, 2205, 2249,
           2443, 2566, 2586, 2737, 2932, 3041, 3140, 3337, 3504, 3613, 3632, 3946,
           3953, 4047, 4097, 4218, 4233, 4315, 4329, 4486, 4506}}},
        {"C3",
         {11717,
          {864, 3551, 4164, 5538, 8013, 8487, 8846, 8986, 10925},
          {2256, 6346, 6495, 6959, 7551, 8409, 8725, 10317, 11554}}},
        {"C4",
         {11717,
          {1106, 1985, 2497, 3036, 3394, 5118, 5136, 5276, 6506, 6523, 7450, 8338,
           8472, 9662, 11434},
          {471, 974, 1775, 5048, 5595, 5617, 6805, 8861, 8894, 9009, 9158, 9416,
           11071, 11379, 11404}}},
        {"C5",
         {11717,
          {242,  432,  447,  784,  1040, 1669, 1786, 2430, 2496, 2643, 2682, 3161,
           3173, 3952, 4461, 5319, 5336, 5369, 5423, 5678, 5768, 5891, 6906, 6943,
           7207, 7535, 7740, 7743, 8435, 8496, 8608, 8765, 8824, 9251, 9463, 9635,
           9637, 9659, 9685, 9969, 9971, 10052, 10284, 10397, 10525, 10821, 11367},
          {144,  284,  722,  724,  821,  1403, 1465, 1546, 2028, 2277, 2569, 2916,
           3108, 3286, 3400, 3460, 3759, 3844, 3983, 4252, 4600, 4631, 5289, 5323,
           5587, 6004, 6403, 7380, 7427, 7826, 7899, 7998, 8106, 8960, 9004, 9196,
           9348, 9508, 9803, 10058, 10497, 10671, 10751, 10865, 11092, 11362, 11394}}},
        {"C6",
         {4973,
          {516,  739,  988,  1332, 1408, 1503, 1668, 1671, 1743, 1983, 2042, 2110, 2466,
           2583, 2661, 2808, 2863, 2918, 2976, 3388, 3551, 3828, 4337, 4533, 4741},
          {132,  448,  502,  769,  868,  1063, 1436, 1457, 1511, 1676, 2023, 2422, 2469,
           2613, 2620, 3197, 3499, 3754, 4020, 4054, 4211, 4286, 4528, 4599, 4930}}},
        {"C7",
         {6883,
          {709,  792,  854,  907,  1548, 1608, 2062, 2152, 2158, 2359, 2625, 2981, 3372,
           3572, 3664, 3716, 3726, 4283, 5311, 5551, 6014, 6432, 6569, 6595, 6636},
          {824,  934,  1220, 1570, 2129, 2244, 2526, 2629, 3533, 3557, 3708, 3833, 3862,
           4147, 4252, 4556, 4636, 4662, 5254, 5286, 5375, 5691, 5738, 6347, 6785}}},
        {"C8",
         {14867,
          {1383, 1783, 1940, 2117, 2834, 3216, 3347, 4168, 4267, 6118, 7683, 8431, 9114,
           9191, 9562, 10170, 10515, 10874, 11604, 12110, 13137, 13202, 13508, 14658, 14687},
          {189,  272,  753,  938,  1372, 1940, 1984, 2524, 3072, 4414, 4637, 4807, 4971,
           6029, 6360, 6931, 6970, 7653, 8817, 9193, 11761, 11981, 12242, 12549, 13846}}},
    };
    return table;
}

} // namespace

const std::vector<std::string>& builtin_code_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, spec] : builtin_table()) out.push_back(name);
        return out;
    }();
    return names;
}

bool is_builtin_code(const std::string& name) { return builtin_table().count(name) != 0; }

ParityCheckMatrix load_builtin_code(const std::string& name) {
    auto it = builtin_table().find(name);
    if (it == builtin_table().end()) throw SpecError("unknown builtin code: " + name);
    return build_qc2(it->second.p, it->second.s0, it->second.s1);
}

std::string builtin_code_json(const std::string& name) {
    return code_spec_json(load_builtin_code(name));
}

ParityCheckMatrix resolve_code_spec(const std::string& spec) {
    constexpr const char* prefix = "builtin:";
    if (spec.rfind(prefix, 0) == 0) return load_builtin_code(spec.substr(8));
    return load_code_spec_file(spec);
}

}
