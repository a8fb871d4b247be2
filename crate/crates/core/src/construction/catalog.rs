//! The four reference curves with their listed sections.

use crate::arith::{parse_rat, rat, BiPolyQ, PolyQ, Rat};
use crate::error::{Error, Result};

use super::surface::{RatPointQT, SurfaceQT};

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub surface: SurfaceQT,
    pub points: Vec<RatPointQT>,
    pub claimed_rank: usize,
    /// Fiber used for height computations (None when the curve is already over Q).
    pub default_t0: Option<Rat>,
    /// `[A, B, C]` when the surface is y^2 = A(x) T^4 + B(x) T^2 + C(x).
    pub biquadratic: Option<[PolyQ; 3]>,
    /// Published regulator of the points at `default_t0`, in the source's own
    /// height normalization.
    pub reference_det: Option<f64>,
}

pub const CATALOG_NAMES: [&str; 4] = ["rank6-weierstrass", "rank7-quartic", "rank8-quartic", "dependent10"];

fn q(s: &str) -> Rat {
    parse_rat(s).expect("catalog literal")
}

fn poly(coeffs: &[&str]) -> PolyQ {
    PolyQ::new(coeffs.iter().map(|s| q(s)).collect())
}

/// Product of (x - r) over the given roots, times k.
fn from_roots(k: i64, roots: &[i64]) -> PolyQ {
    roots.iter().fold(PolyQ::constant(Rat::from(k)), |acc, &r| &acc * &PolyQ::from_i64s(&[-r, 1]))
}

/// Builds y^2 = A(x) T^4 + B(x) T^2 + C(x).
pub fn biquadratic_surface(a: &PolyQ, b: &PolyQ, c: &PolyQ) -> BiPolyQ {
    let n = [a, b, c].iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    BiPolyQ::from_rows(
        (0..=n).map(|i| PolyQ::new(vec![c.coeff(i), Rat::new(), b.coeff(i), Rat::new(), a.coeff(i)])).collect(),
    )
}

fn pt(x: Rat, y: PolyQ) -> RatPointQT {
    RatPointQT::with_constant_x(x, y)
}

fn rank6_weierstrass() -> Result<CatalogEntry> {
    let c = |s: &str| PolyQ::constant(q(s));
    let surface = SurfaceQT::weierstrass(
        [
            PolyQ::zero(),
            PolyQ::zero(),
            PolyQ::zero(),
            c("1123187040185717205972"),
            c("50786893859117937639786031372848"),
        ],
        "rank6-weierstrass",
    )?;
    let pts = [
        ("67585071288", "20866449849961716"),
        ("60673071396", "18500949214922664"),
        ("49153071576", "14991664661755236"),
        ("33025071828", "11131001682078096"),
        ("12289072152", "8151425152633980"),
        ("-13054927452", "5822267813027064"),
    ];
    Ok(CatalogEntry {
        name: "rank6-weierstrass",
        description: "y^2 = x^3 + A x + B over Q with six independent integral points",
        surface,
        points: pts.iter().map(|(x, y)| pt(q(x), c(y))).collect(),
        claimed_rank: 6,
        default_t0: None,
        reference_det: Some(880_000.0),
        biquadratic: None,
    })
}

fn rank7_quartic() -> Result<CatalogEntry> {
    let (a1, a2, a3, a4, c1, c2) = (-25i64, -5, -10, -1, -9, 15);
    let a = from_roots(a1 * a2 * a3 * a4, &[a1, a2, a3, a4]);
    let c = from_roots(a1 * a2 * c1 * c2, &[a1, a2, c1, c2]);
    let b = from_roots(a1 * a1 * a2 * a2, &[c1, c2, a3, a4]);
    let four = Rat::from(4);
    let (b4, c4) = (b.scale(&four), c.scale(&four));
    let surface = SurfaceQT::discriminant_form(biquadratic_surface(&a, &b4, &c4), "rank7-quartic")?;
    let t = |k: &str| poly(&["0", k]);
    let t2 = |k: &str| poly(&["0", "0", k]);
    let points = vec![
        pt(q("-25"), t("120000")),
        pt(q("-5"), t("10000")),
        pt(q("-10"), poly(&["11250"])),
        pt(q("-1"), poly(&["28800"])),
        pt(q("-9"), t2("800")),
        pt(q("15"), t2("20000")),
        pt(q("65/7"), poly(&["-2880000/49", "0", "540000/49"])),
    ];
    Ok(CatalogEntry {
        name: "rank7-quartic",
        description: "y^2 = A(x) T^4 + 4 B(x) T^2 + 4 C(x) with seven sections",
        surface,
        points,
        claimed_rank: 7,
        default_t0: Some(Rat::from(20)),
        reference_det: Some(37_472.0),
        biquadratic: Some([a, b4, c4]),
    })
}

/// A(x), B(x), C(x) of the rank 8 curve.
pub fn rank8_abc() -> [PolyQ; 3] {
    let a = poly(&["0", "0", "0", "0", "1"]);
    let b = poly(&["144", "-9/2", "-89233/1152", "89071/36864", "-5852770213/382205952"]);
    let c = poly(&[
        "0",
        "-5881576729/169869312",
        "527067904642903/880602513408",
        "-528356915749387/28179280429056",
        "34254919166180065369/584325558976905216",
    ]);
    [a, b, c]
}

fn rank8_quartic() -> Result<CatalogEntry> {
    let [a, b, c] = rank8_abc();
    let surface = SurfaceQT::discriminant_form(biquadratic_surface(&a, &b, &c), "rank8-quartic")?;
    let mut points = vec![pt(Rat::new(), poly(&["0", "12"]))];
    for xi in [1i64, -1, 4, -4, 9, -9, 16] {
        let x = Rat::from(xi);
        let x2 = Rat::from(xi * xi);
        let x4 = Rat::from(x2.square_ref());
        let shift = Rat::from(b.eval(&x) / Rat::from(&x4 * 2u32));
        points.push(pt(x, PolyQ::new(vec![shift, Rat::new(), Rat::from(1)]).scale(&x2)));
    }
    Ok(CatalogEntry {
        name: "rank8-quartic",
        description: "y^2 = x^4 T^4 + B(x) T^2 + C(x) with eight sections",
        surface,
        points,
        claimed_rank: 8,
        default_t0: Some(Rat::from(1)),
        reference_det: Some(124_079_248_627.08),
        biquadratic: Some([a, b, c]),
    })
}

fn dependent10() -> Result<CatalogEntry> {
    let a = &from_roots(1, &[1, 1]) * &PolyQ::from_i64s(&[-1, 2]).pow(2);
    let b = PolyQ::from_i64s(&[1, -24, -239, 2346, 12316]);
    let four = Rat::from(4);
    let (b4, c4) = (b.scale(&four), a.scale(&four));
    let surface = SurfaceQT::discriminant_form(biquadratic_surface(&a, &b4, &c4), "dependent10")?;
    let plus = poly(&["2", "0", "1"]);
    let minus = poly(&["-2", "0", "1"]);
    let points = vec![
        pt(Rat::new(), plus.clone()),
        pt(rat(-1, 19), plus.scale(&rat(420, 361))),
        pt(rat(-1, 4), plus.scale(&rat(15, 8))),
        pt(rat(1, 9), plus.scale(&rat(56, 81))),
        pt(rat(-1, 7), minus.scale(&rat(72, 49))),
        pt(rat(-1, 5), minus.scale(&rat(42, 25))),
        pt(rat(1, 11), minus.scale(&rat(90, 121))),
        pt(rat(1, 16), minus.scale(&rat(105, 128))),
        pt(Rat::from(1), poly(&["0", "240"])),
        pt(rat(1, 2), poly(&["0", "63"])),
    ];
    Ok(CatalogEntry {
        name: "dependent10",
        description: "y^2 = A(x) T^4 + 4 B(x) T^2 + 4 A(x) with ten sections spanning rank 5",
        surface,
        points,
        claimed_rank: 5,
        default_t0: Some(Rat::from(20)),
        reference_det: None,
        biquadratic: Some([a, b4, c4]),
    })
}

fn verified(entry: CatalogEntry) -> Result<CatalogEntry> {
    for (i, p) in entry.points.iter().enumerate() {
        if !entry.surface.contains(p) {
            return Err(Error::Transcription(format!("{}: point {} = {} is off the curve", entry.name, i + 1, p)));
        }
    }
    Ok(entry)
}

/// All catalog entries, each checked point by point against its curve.
pub fn catalog() -> Result<Vec<CatalogEntry>> {
    [rank6_weierstrass, rank7_quartic, rank8_quartic, dependent10].iter().map(|build| verified(build()?)).collect()
}

pub fn catalog_entry(name: &str) -> Result<CatalogEntry> {
    let build = match name {
        "rank6-weierstrass" => rank6_weierstrass,
        "rank7-quartic" => rank7_quartic,
        "rank8-quartic" => rank8_quartic,
        "dependent10" => dependent10,
        other => {
            return Err(Error::Precondition(format!(
                "unknown catalog curve {other:?}; expected one of {}",
                CATALOG_NAMES.join(", ")
            )))
        }
    };
    verified(build()?)
}
