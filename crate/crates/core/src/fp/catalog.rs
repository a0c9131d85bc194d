//! Named small groups with standard presentations.

use super::presentation::FpPresentation;

/// A catalog entry: canonical name, aliases, presentation text and order.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub aliases: Vec<&'static str>,
    pub presentation: String,
    pub order: usize,
}

const NAMED: &[(&str, &[&str], &str, usize)] = &[
    ("Z2xZ2", &["V4", "Z2*Z2"], "< a, b | a^2, b^2, [a, b] >", 4),
    ("S3", &["D3"], "< a, b | a^2, b^2, (a b)^3 >", 6),
    ("D4", &["D8"], "< r, s | r^4, s^2, (s r)^2 >", 8),
    ("Q8", &[], "< i, j | i^4, i^2 j^-2, j^-1 i j i >", 8),
    ("A4", &[], "< a, b | a^2, b^3, (a b)^3 >", 12),
    ("A5", &[], "< a, b | a^2, b^3, (a b)^5 >", 60),
];

/// Cyclic groups `Z1` to `Z16` followed by the named non-cyclic groups.
pub fn catalog() -> Vec<CatalogEntry> {
    let cyclic = (1..=16).map(|n| CatalogEntry {
        name: format!("Z{n}"),
        aliases: Vec::new(),
        presentation: if n == 1 {
            "< a | a >".to_string()
        } else {
            format!("< a | a^{n} >")
        },
        order: n,
    });
    let named = NAMED.iter().map(|&(name, aliases, text, order)| CatalogEntry {
        name: name.to_string(),
        aliases: aliases.to_vec(),
        presentation: text.to_string(),
        order,
    });
    cyclic.chain(named).collect()
}

/// Looks up a group by name, case-insensitively. `Z_6` is accepted for `Z6`.
pub fn lookup(name: &str) -> Option<FpPresentation> {
    let key: String = name.chars().filter(|c| !matches!(c, '_' | ' ')).collect::<String>().to_ascii_uppercase();
    catalog()
        .into_iter()
        .find(|e| e.name.to_ascii_uppercase() == key || e.aliases.iter().any(|a| a.to_ascii_uppercase() == key))
        .map(|e| e.presentation.parse().expect("catalog presentations parse"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::{realize, EnumOptions};

    #[test]
    fn catalog_orders_are_correct() {
        for e in catalog() {
            let p: FpPresentation = e.presentation.parse().unwrap();
            let g = realize(&p, &EnumOptions::default()).unwrap();
            assert_eq!(g.order(), e.order, "{}", e.name);
        }
    }

    #[test]
    fn lookup_aliases() {
        assert!(lookup("V4").is_some());
        assert!(lookup("z_6").is_some());
        assert!(lookup("q8").is_some());
        assert!(lookup("Z17").is_none());
    }
}
