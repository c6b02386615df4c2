//! Shorthand parsers for command-line values.

use crate::exactlin::{is_prime, Fq};
use crate::groups::{build_group, Group, GroupSpec};

/// A group given as JSON (`{"cyclic":4}`) or shorthand: `C4`, `Q8`,
/// `C2xC2`/`V4`, or products `AxB` of these.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec, String> {
    let t = text.trim();
    if t.starts_with('{') {
        return serde_json::from_str(t).map_err(|e| format!("bad group JSON '{t}': {e}"));
    }
    let lower = t.to_ascii_lowercase();
    match lower.as_str() {
        "q8" | "quaternion8" => return Ok(GroupSpec::Quaternion8(true)),
        "v4" | "klein4" | "c2xc2" => return Ok(GroupSpec::Klein4(true)),
        _ => {}
    }
    if let Some((a, b)) = lower.split_once('x') {
        return Ok(GroupSpec::product(parse_group_spec(a)?, parse_group_spec(b)?));
    }
    if let Some(n) = lower.strip_prefix('c') {
        let n: usize = n.parse().map_err(|_| format!("bad cyclic group '{t}'"))?;
        return Ok(GroupSpec::Cyclic(n));
    }
    Err(format!("unknown group '{t}' (use C<n>, Q8, C2xC2, AxB or JSON)"))
}

pub fn parse_group(text: &str) -> Result<Group, String> {
    build_group(&parse_group_spec(text)?).map_err(|e| e.to_string())
}

/// A field given as `F4`, `4`, `2^2` or `p=2,deg=2`.
pub fn parse_field(text: &str) -> Result<Fq, String> {
    let t = text.trim().trim_start_matches(['F', 'f']);
    let (p, e) = if let Some((p, e)) = t.split_once('^') {
        (parse_num(p)?, parse_num(e)? as u32)
    } else if t.contains('=') {
        let mut p = None;
        let mut e = 1;
        for part in t.split(',') {
            match part.split_once('=') {
                Some(("p", v)) => p = Some(parse_num(v)?),
                Some(("deg", v)) => e = parse_num(v)? as u32,
                _ => return Err(format!("bad field '{text}'")),
            }
        }
        (p.ok_or_else(|| format!("bad field '{text}'"))?, e)
    } else {
        prime_power(parse_num(t)?).ok_or_else(|| format!("{text} is not a prime power"))?
    };
    Fq::new(p, e).map_err(|err| err.to_string())
}

fn parse_num(s: &str) -> Result<u64, String> {
    s.trim().parse().map_err(|_| format!("bad number '{s}'"))
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    if !is_prime(p) {
        return None;
    }
    let (mut r, mut e) = (q, 0);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}
