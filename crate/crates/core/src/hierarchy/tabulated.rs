use crate::ncalg::NCPoly;

/// The first three hierarchy polynomials as commonly tabulated:
///
/// * `G_1 = U_0`
/// * `G_2 = U_2 + 3U_0²`
/// * `G_3 = U_4 + 5U_0U_2 + 5U_2U_0 + 5U_1² + 10U_0³`
pub fn tabulated_g(n: u32) -> Option<NCPoly> {
    let terms: Vec<(i64, Vec<u32>)> = match n {
        1 => vec![(1, vec![0])],
        2 => vec![(1, vec![2]), (3, vec![0, 0])],
        3 => vec![
            (1, vec![4]),
            (5, vec![0, 2]),
            (5, vec![2, 0]),
            (5, vec![1, 1]),
            (10, vec![0, 0, 0]),
        ],
        _ => return None,
    };
    Some(NCPoly::from_int_terms(terms))
}
