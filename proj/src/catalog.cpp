#include "ellsurf/catalog.hpp"

namespace ellsurf {

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries{
      {"x3_plus_t_f5", "y^2 = x^3 + t over F_5",
       "[field]\np = 5\n\n[model]\na6 = [0, 1]\n\n[metadata]\nmw_rank = 0\nmw_torsion_order = 1\n"
       "notes = y^2 = x^3 + t\n",
       "1 - 50t + 1125t^2 - 15000t^3 + 131250t^4 - 787500t^5 + 3281250t^6 - 9375000t^7 + 17578125t^8 - 19531250t^9 + 9765625t^10", "1", "1", "1", "fb2841d5531739301ab68a2ad6f4bbda0e5df2682eb611c58455a9e9ad640599"},
      {"x3_plus_t_f7", "y^2 = x^3 + t over F_7",
       "[field]\np = 7\n\n[model]\na6 = [0, 1]\n\n[metadata]\nmw_rank = 0\nmw_torsion_order = 1\n"
       "notes = y^2 = x^3 + t\n",
       "1 - 70t + 2205t^2 - 41160t^3 + 504210t^4 - 4235364t^5 + 24706290t^6 - 98825160t^7 + 259416045t^8 - 403536070t^9 + 282475249t^10", "1", "1", "1", "3b9f01acdcdb487f3f2d9e101ff3d994e0c37549d539745e4ef8981f577853fc"},
      {"legendre_f5", "y^2 = x(x - 1)(x - t) over F_5",
       "[field]\np = 5\n\n[model]\na2 = [-1, -1]\na4 = [0, 1]\n\n[metadata]\nmw_rank = 0\nmw_torsion_order = 4\n"
       "notes = Legendre family; 2-torsion (Z/2)^2 from x = 0, 1, t\n",
       "1 - 50t + 1125t^2 - 15000t^3 + 131250t^4 - 787500t^5 + 3281250t^6 - 9375000t^7 + 17578125t^8 - 19531250t^9 + 9765625t^10", "1", "", "1", "cb8abf8f25860a80d31691e1eb0dc4f65c64603476bdb7be6c59fdbbda1e1254"},
      {"generic_i1_f5", "y^2 = x^3 + t x + t over F_5",
       "[field]\np = 5\n\n[model]\na4 = [0, 1]\na6 = [0, 1]\n\n[metadata]\n"
       "notes = rank left undeclared; inferred from ord L\n",
       "1 - 50t + 1125t^2 - 15000t^3 + 131250t^4 - 787500t^5 + 3281250t^6 - 9375000t^7 + 17578125t^8 - 19531250t^9 + 9765625t^10", "1 - 5t", "", "", "0a39a1fcd8fa5ed28f4fb8cf1c4931bdfbf9f2efbe2b1d6cffa25f113bc53a69"},
  };
  return entries;
}

const CatalogEntry& catalog_entry(std::string_view name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  std::string known;
  for (const auto& e : catalog()) known += (known.empty() ? "" : ", ") + e.name;
  throw Error(ErrorKind::InvalidArgument, "no catalog fixture '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace ellsurf
