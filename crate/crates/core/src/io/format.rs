//! The instance file format.
//!
//! ```text
//! CLEVERSHOP 1
//! BOOKS <n>
//! SHOPS <m>
//! SHOP <shop> <discount> <threshold>
//! OFFER <book> <shop> <price>
//! BUDGET <K>
//! ```
//!
//! `BOOKS` and `SHOPS` follow the header in that order; the remaining lines
//! may come in any order. The canonical form lists shops by id, offers by
//! `(book, shop)`, the optional budget last, single spaces and a final
//! newline.

use std::fmt::Write;

use super::{content_lines, expect_arity, parse_int, ParseError};
use crate::model::{DiscountRule, Instance, Money, RawInstance, ValidationError};

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, t)) if t == ["CLEVERSHOP", "1"] => {}
        Some((n, _)) => return Err(ParseError::at(n, "missing header")),
        None => return Err(ParseError::whole("missing header")),
    }
    let num_books = count_line(lines.next(), "BOOKS")?;
    let num_shops = count_line(lines.next(), "SHOPS")?;

    let mut rules: Vec<Option<DiscountRule>> = vec![None; num_shops];
    let mut offers: Vec<(usize, usize, usize, Money)> = Vec::new();
    let mut budget = None;
    for (n, t) in lines {
        match t[0] {
            "SHOP" => {
                expect_arity(n, &t, 4)?;
                let shop = id(n, t[1], "shop", num_shops)?;
                let discount = money(n, t[2], "discount")?;
                let threshold = money(n, t[3], "threshold")?;
                if rules[shop]
                    .replace(DiscountRule::new(discount, threshold))
                    .is_some()
                {
                    return Err(ParseError::at(
                        n,
                        format!("shop {} defined twice", shop + 1),
                    ));
                }
            }
            "OFFER" => {
                expect_arity(n, &t, 4)?;
                let book = id(n, t[1], "book", num_books)?;
                let shop = id(n, t[2], "shop", num_shops)?;
                offers.push((n, book, shop, money(n, t[3], "price")?));
            }
            "BUDGET" => {
                expect_arity(n, &t, 2)?;
                if budget.replace(money(n, t[1], "budget")?).is_some() {
                    return Err(ParseError::at(n, "BUDGET given twice"));
                }
            }
            other => return Err(ParseError::at(n, format!("unknown keyword `{other}`"))),
        }
    }

    let shops = rules
        .iter()
        .enumerate()
        .map(|(s, r)| {
            r.ok_or_else(|| ParseError::whole(format!("shop {} has no SHOP line", s + 1)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut raw = RawInstance::new(num_books, shops);
    raw.budget = budget;
    let mut seen = std::collections::HashSet::new();
    for &(n, b, s, p) in &offers {
        if !seen.insert((b, s)) {
            return Err(ParseError::at(
                n,
                format!("duplicate offer of book {} at shop {}", b + 1, s + 1),
            ));
        }
        raw.offer(b, s, p);
    }
    raw.validate().map_err(|e| match e {
        ValidationError::BookUncovered(b) => {
            ParseError::whole(format!("book {} has no offer", b + 1))
        }
        other => ParseError::whole(other.to_string()),
    })
}

fn count_line(line: Option<(usize, Vec<&str>)>, keyword: &str) -> Result<usize, ParseError> {
    match line {
        Some((n, t)) if t[0] == keyword => {
            expect_arity(n, &t, 2)?;
            parse_int(n, t[1], keyword)
        }
        Some((n, _)) => Err(ParseError::at(n, format!("expected {keyword}"))),
        None => Err(ParseError::whole(format!("missing {keyword}"))),
    }
}

/// 1-based id in `1..=count`, returned 0-based.
fn id(line: usize, token: &str, what: &str, count: usize) -> Result<usize, ParseError> {
    let v: usize = parse_int(line, token, what)?;
    if v == 0 || v > count {
        return Err(ParseError::at(
            line,
            format!("{what} {v} out of range 1..={count}"),
        ));
    }
    Ok(v - 1)
}

fn money(line: usize, token: &str, what: &str) -> Result<Money, ParseError> {
    let v: Money = parse_int(line, token, what)?;
    if v < 0 {
        return Err(ParseError::at(line, format!("{what} {v} is negative")));
    }
    Ok(v)
}

pub fn serialize_instance(instance: &Instance) -> String {
    let mut out = String::new();
    out.push_str("CLEVERSHOP 1\n");
    let _ = writeln!(out, "BOOKS {}", instance.num_books());
    let _ = writeln!(out, "SHOPS {}", instance.num_shops());
    for (s, r) in instance.rules().iter().enumerate() {
        let _ = writeln!(out, "SHOP {} {} {}", s + 1, r.discount, r.threshold);
    }
    for o in instance.offers() {
        let _ = writeln!(out, "OFFER {} {} {}", o.book + 1, o.shop + 1, o.price);
    }
    if let Some(k) = instance.budget() {
        let _ = writeln!(out, "BUDGET {k}");
    }
    out
}
