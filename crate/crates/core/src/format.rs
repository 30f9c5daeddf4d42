//! JSON files for resolutions and certificates.
//!
//! Every file is an envelope
//! `{"format_version", "ring", "group"?, "kind", "payload"}`. Matrices are
//! `{"rows", "cols", "entries"}` with row-major nested arrays of decimal
//! strings; group-ring entries are arrays of base-ring strings in group
//! table order (text literals such as `"1+g1"` are accepted on input).
//! Boundaries are listed from the top degree down, each tagged with its
//! degree. Map components are listed by degree from 0.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::chain::{ChainComplex, ChainHomotopy, ChainMap, HomotopyEquivalence};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::resolution::{ModulePresentation, Orientation, TruncatedResolution};
use crate::ring::{BaseRing, GroupTable, Ring};
use crate::stabilize::{EquivalenceCertificate, StageReport};

pub const FORMAT_VERSION: u32 = 1;
pub const CERTIFICATE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope {
    format_version: u32,
    ring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    group: Option<GroupJson>,
    kind: String,
    payload: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupJson {
    order: usize,
    identity: usize,
    mult: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EntryJson {
    Scalar(String),
    Coefficients(Vec<String>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<EntryJson>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundaryJson {
    degree: usize,
    matrix: MatrixJson,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexJson {
    ranks: Vec<usize>,
    boundaries: Vec<BoundaryJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ResolutionJson {
    length: usize,
    cochain: bool,
    presentation: MatrixJson,
    augmentation: MatrixJson,
    complex: ComplexJson,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IsomorphismJson {
    source: ComplexJson,
    target: ComplexJson,
    forward: Vec<MatrixJson>,
    backward: Vec<MatrixJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StageJson {
    stage: String,
    passed: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateJson {
    certificate_version: u32,
    length: usize,
    cochain: bool,
    seed: Option<u64>,
    presentation: MatrixJson,
    t_ranks: Vec<usize>,
    s_ranks: Vec<usize>,
    first: ComplexJson,
    second: ComplexJson,
    forward: Vec<MatrixJson>,
    backward: Vec<MatrixJson>,
    source_homotopy: Vec<MatrixJson>,
    target_homotopy: Vec<MatrixJson>,
    isomorphism: IsomorphismJson,
    stages: Vec<StageJson>,
}

/// A parsed input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Resolution(TruncatedResolution),
    Certificate(Box<EquivalenceCertificate>),
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn ring_to_json(ring: &Ring) -> (String, Option<GroupJson>) {
    let group = ring.group().map(|g| GroupJson {
        order: g.order(),
        identity: g.identity(),
        mult: g.rows(),
    });
    (ring.descriptor(), group)
}

pub fn parse_ring(descriptor: &str, group: Option<GroupTable>) -> Result<Ring> {
    let prime = |p: &str| -> Result<u64> {
        p.parse()
            .map_err(|_| Error::Parse(format!("bad prime in ring descriptor {descriptor:?}")))
    };
    let (base, wants_group) = match descriptor {
        "Z" => (BaseRing::Integers, false),
        "ZG" => (BaseRing::Integers, true),
        _ => {
            if let Some(p) = descriptor.strip_prefix("FpG:") {
                (BaseRing::prime_field(prime(p)?)?, true)
            } else if let Some(p) = descriptor.strip_prefix("Fp:") {
                (BaseRing::prime_field(prime(p)?)?, false)
            } else {
                return Err(Error::Parse(format!("unknown ring descriptor {descriptor:?}")));
            }
        }
    };
    match (wants_group, group) {
        (false, None) => Ok(match base {
            BaseRing::Integers => Ring::integers(),
            BaseRing::PrimeField(p) => Ring::prime_field(p)?,
        }),
        (true, Some(g)) => Ok(Ring::group_ring(base, g)),
        (true, None) => Err(Error::Parse(format!("{descriptor} needs a group table"))),
        (false, Some(_)) => Err(Error::Parse(format!("{descriptor} takes no group table"))),
    }
}

fn ring_from_envelope(env: &Envelope) -> Result<Ring> {
    let group = match &env.group {
        None => None,
        Some(g) => {
            if g.mult.len() != g.order {
                return Err(Error::InvalidGroupTable(format!(
                    "order {} but {} table rows",
                    g.order,
                    g.mult.len()
                )));
            }
            Some(GroupTable::new(g.mult.clone(), g.identity)?)
        }
    };
    parse_ring(&env.ring, group)
}

fn matrix_to_json(m: &Matrix) -> MatrixJson {
    let ring = m.ring();
    let entries = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|e| {
                    if ring.is_group_ring() {
                        EntryJson::Coefficients(ring.render_coefficients(e))
                    } else {
                        EntryJson::Scalar(ring.render(e))
                    }
                })
                .collect()
        })
        .collect();
    MatrixJson {
        rows: m.rows(),
        cols: m.cols(),
        entries,
    }
}

fn matrix_from_json(ring: &Ring, m: &MatrixJson) -> Result<Matrix> {
    if m.entries.len() != m.rows {
        return Err(Error::Parse(format!(
            "matrix declares {} rows but lists {}",
            m.rows,
            m.entries.len()
        )));
    }
    let rows = m
        .entries
        .iter()
        .map(|row| {
            if row.len() != m.cols {
                return Err(Error::Parse(format!(
                    "matrix declares {} columns but a row has {}",
                    m.cols,
                    row.len()
                )));
            }
            row.iter()
                .map(|e| match e {
                    EntryJson::Scalar(s) => ring.parse(s),
                    EntryJson::Coefficients(c) if ring.is_group_ring() => ring.parse_coefficients(c),
                    EntryJson::Coefficients(_) => Err(Error::Parse(format!(
                        "coefficient list entry over {}",
                        ring.descriptor()
                    ))),
                })
                .collect()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(ring, m.cols, rows)
}

fn complex_to_json(c: &ChainComplex) -> ComplexJson {
    ComplexJson {
        ranks: c.ranks().to_vec(),
        boundaries: (1..=c.length())
            .rev()
            .map(|degree| BoundaryJson {
                degree,
                matrix: matrix_to_json(c.boundary(degree)),
            })
            .collect(),
    }
}

fn complex_from_json(ring: &Ring, c: &ComplexJson) -> Result<ChainComplex> {
    let n = c.ranks.len().checked_sub(1).ok_or_else(|| parse_err("complex with no terms"))?;
    let mut slots: Vec<Option<Matrix>> = vec![None; n];
    for b in &c.boundaries {
        if b.degree == 0 || b.degree > n {
            return Err(Error::DegreeOutOfRange { degree: b.degree, max: n });
        }
        if slots[b.degree - 1].is_some() {
            return Err(Error::Parse(format!("boundary d_{} listed twice", b.degree)));
        }
        slots[b.degree - 1] = Some(matrix_from_json(ring, &b.matrix)?);
    }
    let boundaries = slots
        .into_iter()
        .enumerate()
        .map(|(i, m)| m.ok_or_else(|| Error::Parse(format!("boundary d_{} missing", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    ChainComplex::new(ring, c.ranks.clone(), boundaries)
}

fn matrices_to_json(ms: &[Matrix]) -> Vec<MatrixJson> {
    ms.iter().map(matrix_to_json).collect()
}

fn matrices_from_json(ring: &Ring, ms: &[MatrixJson]) -> Result<Vec<Matrix>> {
    ms.iter().map(|m| matrix_from_json(ring, m)).collect()
}

fn envelope(ring: &Ring, kind: &str, payload: serde_json::Value) -> String {
    let (ring, group) = ring_to_json(ring);
    let env = Envelope {
        format_version: FORMAT_VERSION,
        ring,
        group,
        kind: kind.into(),
        payload,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("serializable");
    s.push('\n');
    s
}

pub fn resolution_to_json(res: &TruncatedResolution) -> String {
    let payload = ResolutionJson {
        length: res.length(),
        cochain: res.orientation() == Orientation::Cochain,
        presentation: matrix_to_json(res.presentation().relations()),
        augmentation: matrix_to_json(res.augmentation()),
        complex: complex_to_json(res.complex()),
    };
    envelope(res.ring(), "resolution", serde_json::to_value(payload).expect("serializable"))
}

pub fn certificate_to_json(cert: &EquivalenceCertificate) -> String {
    let e = &cert.equivalence;
    let iso = &cert.isomorphism;
    let payload = CertificateJson {
        certificate_version: CERTIFICATE_VERSION,
        length: cert.length(),
        cochain: cert.orientation == Orientation::Cochain,
        seed: cert.seed,
        presentation: matrix_to_json(cert.presentation.relations()),
        t_ranks: cert.t_ranks.clone(),
        s_ranks: cert.s_ranks.clone(),
        first: complex_to_json(e.source()),
        second: complex_to_json(e.target()),
        forward: matrices_to_json(e.forward.components()),
        backward: matrices_to_json(e.backward.components()),
        source_homotopy: matrices_to_json(e.source_homotopy.components()),
        target_homotopy: matrices_to_json(e.target_homotopy.components()),
        isomorphism: IsomorphismJson {
            source: complex_to_json(iso.source()),
            target: complex_to_json(iso.target()),
            forward: matrices_to_json(iso.forward.components()),
            backward: matrices_to_json(iso.backward.components()),
        },
        stages: cert
            .stages
            .iter()
            .map(|s| StageJson {
                stage: s.stage.clone(),
                passed: s.passed,
            })
            .collect(),
    };
    envelope(cert.ring(), "certificate", serde_json::to_value(payload).expect("serializable"))
}

fn orientation(cochain: bool) -> Orientation {
    if cochain {
        Orientation::Cochain
    } else {
        Orientation::Chain
    }
}

fn resolution_from_payload(ring: &Ring, payload: serde_json::Value) -> Result<TruncatedResolution> {
    let r: ResolutionJson = serde_json::from_value(payload).map_err(parse_err)?;
    let complex = complex_from_json(ring, &r.complex)?;
    if complex.length() != r.length {
        return Err(Error::LengthMismatch {
            left: r.length,
            right: complex.length(),
        });
    }
    TruncatedResolution::with_orientation(
        ModulePresentation::new(matrix_from_json(ring, &r.presentation)?),
        complex,
        matrix_from_json(ring, &r.augmentation)?,
        orientation(r.cochain),
    )
}

fn certificate_from_payload(ring: &Ring, payload: serde_json::Value) -> Result<EquivalenceCertificate> {
    let c: CertificateJson = serde_json::from_value(payload).map_err(parse_err)?;
    if c.certificate_version != CERTIFICATE_VERSION {
        return Err(Error::Parse(format!(
            "unsupported certificate_version {}",
            c.certificate_version
        )));
    }
    if c.t_ranks.len() != c.length + 1 || c.s_ranks.len() != c.length + 1 {
        return Err(Error::LengthMismatch {
            left: c.length + 1,
            right: c.t_ranks.len().min(c.s_ranks.len()),
        });
    }
    let first = Arc::new(complex_from_json(ring, &c.first)?);
    let second = Arc::new(complex_from_json(ring, &c.second)?);
    if first.length() != c.length {
        return Err(Error::LengthMismatch {
            left: c.length,
            right: first.length(),
        });
    }
    let equivalence = HomotopyEquivalence::new(
        ChainMap::new(first.clone(), second.clone(), matrices_from_json(ring, &c.forward)?)?,
        ChainMap::new(second.clone(), first.clone(), matrices_from_json(ring, &c.backward)?)?,
        ChainHomotopy::new(first.clone(), first, matrices_from_json(ring, &c.source_homotopy)?)?,
        ChainHomotopy::new(second.clone(), second, matrices_from_json(ring, &c.target_homotopy)?)?,
    )?;
    let src = Arc::new(complex_from_json(ring, &c.isomorphism.source)?);
    let tgt = Arc::new(complex_from_json(ring, &c.isomorphism.target)?);
    let isomorphism = HomotopyEquivalence::isomorphism(
        ChainMap::new(src.clone(), tgt.clone(), matrices_from_json(ring, &c.isomorphism.forward)?)?,
        ChainMap::new(tgt, src, matrices_from_json(ring, &c.isomorphism.backward)?)?,
    )?;
    Ok(EquivalenceCertificate {
        presentation: ModulePresentation::new(matrix_from_json(ring, &c.presentation)?),
        orientation: orientation(c.cochain),
        t_ranks: c.t_ranks,
        s_ranks: c.s_ranks,
        equivalence,
        isomorphism,
        stages: c
            .stages
            .into_iter()
            .map(|s| StageReport {
                stage: s.stage,
                passed: s.passed,
            })
            .collect(),
        seed: c.seed,
    })
}

pub fn read_document(text: &str) -> Result<Document> {
    let env: Envelope = serde_json::from_str(text).map_err(parse_err)?;
    if env.format_version != FORMAT_VERSION {
        return Err(Error::Parse(format!(
            "unsupported format_version {}",
            env.format_version
        )));
    }
    let ring = ring_from_envelope(&env)?;
    match env.kind.as_str() {
        "resolution" => resolution_from_payload(&ring, env.payload).map(Document::Resolution),
        "certificate" => certificate_from_payload(&ring, env.payload).map(|c| Document::Certificate(Box::new(c))),
        other => Err(Error::Parse(format!("unknown kind {other:?}"))),
    }
}

pub fn read_resolution(text: &str) -> Result<TruncatedResolution> {
    match read_document(text)? {
        Document::Resolution(r) => Ok(r),
        Document::Certificate(_) => Err(Error::Parse("expected a resolution, found a certificate".into())),
    }
}

pub fn read_certificate(text: &str) -> Result<EquivalenceCertificate> {
    match read_document(text)? {
        Document::Certificate(c) => Ok(*c),
        Document::Resolution(_) => Err(Error::Parse("expected a certificate, found a resolution".into())),
    }
}
