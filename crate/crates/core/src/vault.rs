//! Twin-pair authentication and a toy file vault keyed by the public
//! number string. The stream cipher only demonstrates gating; it is not
//! meant to be secure.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::coloring::ColoredGraph;
use crate::error::{Error, Result};
use crate::topcode::{
    decimal, emit_string, realize_merged, rederives, to_topcode_matrix, NumberString, TopcodeMatrix,
};
use crate::validators::{check_twin, ColoringClass};

pub const MAGIC: &[u8; 4] = b"TOPC";
pub const VERSION: u8 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuthBundle {
    pub public: ColoredGraph,
    pub private: ColoredGraph,
    #[serde(with = "decimal")]
    pub rule: BigUint,
    pub class: ColoringClass,
}

/// Verdict of [`authenticate`]; `diagnostic` names the first failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuthVerdict {
    pub accepted: bool,
    pub diagnostic: Option<String>,
}

impl AuthVerdict {
    fn reject(why: impl Into<String>) -> Self {
        AuthVerdict {
            accepted: false,
            diagnostic: Some(why.into()),
        }
    }
}

impl AuthBundle {
    pub fn public_matrix(&self) -> Result<TopcodeMatrix> {
        to_topcode_matrix(&self.public.graph, &self.public.coloring)
    }

    pub fn private_matrix(&self) -> Result<TopcodeMatrix> {
        to_topcode_matrix(&self.private.graph, &self.private.coloring)
    }

    /// Public and private strings under the bundle's rule.
    pub fn strings(&self) -> Result<(NumberString, NumberString)> {
        Ok((
            emit_string(&self.public_matrix()?, &self.rule)?,
            emit_string(&self.private_matrix()?, &self.rule)?,
        ))
    }
}

/// Accepts iff the two sides form a perfect twin pair for the bundle's
/// class and both strings re-derive from their matrices under the bundle's
/// rule.
pub fn authenticate(
    bundle: &AuthBundle,
    s_pub: &NumberString,
    s_priv: &NumberString,
) -> AuthVerdict {
    let twin = check_twin(
        &bundle.public.graph,
        &bundle.public.coloring,
        &bundle.private.graph,
        &bundle.private.coloring,
        bundle.class,
    );
    match twin {
        Err(e) => return AuthVerdict::reject(format!("twin check failed: {e}")),
        Ok(r) if !r.perfect => return AuthVerdict::reject("vertex colors do not fill [0, 2q]"),
        Ok(_) => {}
    }
    let (pm, sm) = match (bundle.public_matrix(), bundle.private_matrix()) {
        (Ok(p), Ok(s)) => (p, s),
        (Err(e), _) | (_, Err(e)) => {
            return AuthVerdict::reject(format!("matrix extraction failed: {e}"))
        }
    };
    if !rederives(&pm, s_pub, &bundle.rule) {
        return AuthVerdict::reject("public string does not re-derive under the rule");
    }
    if !rederives(&sm, s_priv, &bundle.rule) {
        return AuthVerdict::reject("private string does not re-derive under the rule");
    }
    AuthVerdict {
        accepted: true,
        diagnostic: None,
    }
}

fn keystream_byte(digit: u8) -> u8 {
    ((digit as u32 * 23 + 7) % 256) as u8
}

fn apply_stream(data: &[u8], s: &NumberString) -> Vec<u8> {
    let keys: Vec<u8> = s.digit_values().map(keystream_byte).collect();
    data.iter()
        .zip(keys.iter().cycle())
        .map(|(b, k)| b ^ k)
        .collect()
}

fn put_u32(out: &mut Vec<u8>, v: u64) -> Result<()> {
    let v = u32::try_from(v).map_err(|_| Error::Overflow("value exceeds u32 in vault header"))?;
    out.extend_from_slice(&v.to_be_bytes());
    Ok(())
}

/// Header (magic, version, q, 3q entries, rule, digest) then ciphertext.
pub fn vault_encrypt(data: &[u8], bundle: &AuthBundle) -> Result<Vec<u8>> {
    let (s_pub, s_priv) = bundle.strings()?;
    let verdict = authenticate(bundle, &s_pub, &s_priv);
    if !verdict.accepted {
        return Err(Error::Authentication(
            verdict.diagnostic.unwrap_or_default(),
        ));
    }
    let m = bundle.public_matrix()?;
    let mut out = Vec::with_capacity(data.len() + 64 + 12 * m.len());
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    put_u32(&mut out, m.len() as u64)?;
    for v in m.entries() {
        put_u32(&mut out, v as u64)?;
    }
    let rule = bundle.rule.to_bytes_be();
    put_u32(&mut out, rule.len() as u64)?;
    out.extend_from_slice(&rule);
    out.extend_from_slice(&Sha256::digest(s_pub.digits.as_bytes()));
    out.extend_from_slice(&apply_stream(data, &s_pub));
    Ok(out)
}

/// Parsed vault header.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VaultHeader {
    pub matrix: TopcodeMatrix,
    pub rule: BigUint,
    pub digest: [u8; 32],
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.buf.len());
        let end = end.ok_or_else(|| Error::Parse("vault truncated".into()))?;
        let out = &self.buf[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_be_bytes(
            self.take(4)?.try_into().expect("4 bytes"),
        ))
    }
}

/// Splits a vault into its header and ciphertext.
pub fn parse_vault(bytes: &[u8]) -> Result<(VaultHeader, &[u8])> {
    let mut r = Reader { buf: bytes, pos: 0 };
    if r.take(4)? != MAGIC {
        return Err(Error::Parse("not a vault".into()));
    }
    let version = r.take(1)?[0];
    if version != VERSION {
        return Err(Error::Parse(format!("unsupported vault version {version}")));
    }
    let q = r.u32()? as usize;
    let entries: Vec<i64> = (0..3 * q)
        .map(|_| r.u32().map(i64::from))
        .collect::<Result<_>>()?;
    let matrix = TopcodeMatrix::new(
        entries[..q].to_vec(),
        entries[q..2 * q].to_vec(),
        entries[2 * q..].to_vec(),
    )?;
    let len = r.u32()? as usize;
    let rule = BigUint::from_bytes_be(r.take(len)?);
    let digest: [u8; 32] = r.take(32)?.try_into().expect("32 bytes");
    Ok((
        VaultHeader {
            matrix,
            rule,
            digest,
        },
        &bytes[r.pos..],
    ))
}

/// Re-derives the public string from the stored matrix and checks its
/// digest, then authenticates the presented private side against the
/// public graph realized from the matrix, then decrypts.
pub fn vault_decrypt(
    bytes: &[u8],
    private: &ColoredGraph,
    class: ColoringClass,
) -> Result<Vec<u8>> {
    let (header, body) = parse_vault(bytes)?;
    let s_pub = emit_string(&header.matrix, &header.rule)?;
    if Sha256::digest(s_pub.digits.as_bytes()).as_slice() != header.digest {
        return Err(Error::DigestMismatch);
    }
    let (g, c) = realize_merged(&header.matrix)?;
    let bundle = AuthBundle {
        public: ColoredGraph::new(g, c),
        private: private.clone(),
        rule: header.rule.clone(),
        class,
    };
    let s_priv = emit_string(&bundle.private_matrix()?, &header.rule)?;
    let verdict = authenticate(&bundle, &s_pub, &s_priv);
    if !verdict.accepted {
        return Err(Error::Authentication(
            verdict.diagnostic.unwrap_or_default(),
        ));
    }
    Ok(apply_stream(body, &s_pub))
}
