//! Recursive-descent Java parser producing the 72-type AST.
//!
//! The tree shape follows the conventions of the javalang node model:
//! identifiers, operators and modifiers-as-strings are attributes, not nodes;
//! unary operators attach to their operand; selectors (`.f`, `.m()`, `[i]`)
//! hang under the primary they follow. Block bodies of methods, loops,
//! `try`/`catch`/`finally`, lambdas and `synchronized` are always wrapped in a
//! `BlockStatement`.

use super::ast::{AstNode, NodeId, Role, SourceUnit};
use super::lexer::{tokenize, Token, TokenKind};
use crate::error::{Error, Result};
use crate::taxonomy::NodeType;

const MAX_DEPTH: usize = 1500;

const MODIFIERS: &[&str] = &[
    "public", "protected", "private", "static", "abstract", "final", "native", "synchronized",
    "transient", "volatile", "strictfp",
];

const PRIMITIVES: &[&str] = &["boolean", "byte", "char", "short", "int", "long", "float", "double"];

const ASSIGN_OPS: &[&str] = &["=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="];

/// Parse comment-free Java text into a [`SourceUnit`].
pub fn parse_java(source: &str, path: &str) -> Result<SourceUnit> {
    let tokens = tokenize(source, path)?;
    let mut parser = Parser {
        toks: tokens,
        pos: 0,
        path,
        warnings: Vec::new(),
        depth: 0,
    };
    let tree = parser.compilation_unit()?;
    let mut nodes = Vec::new();
    flatten(tree, None, &parser.toks, &mut nodes);
    Ok(SourceUnit::from_nodes(path.to_string(), nodes, parser.warnings))
}

#[derive(Debug)]
struct Tree {
    node_type: NodeType,
    tok: usize,
    role: Role,
    label: Option<String>,
    var_name: Option<String>,
    children: Vec<Tree>,
}

impl Tree {
    fn new(node_type: NodeType, tok: usize) -> Self {
        Tree {
            node_type,
            tok,
            role: Role::Other,
            label: None,
            var_name: None,
            children: Vec::new(),
        }
    }

    fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    fn with_role(mut self, role: Role) -> Self {
        self.role = role;
        self
    }

    fn push(&mut self, child: Tree) {
        self.children.push(child);
    }
}

fn flatten(tree: Tree, parent: Option<NodeId>, toks: &[Token], out: &mut Vec<AstNode>) -> NodeId {
    // Iterative pre-order so deep trees cannot overflow the stack.
    let mut stack = vec![(tree, parent)];
    let mut first = None;
    while let Some((mut t, parent)) = stack.pop() {
        let id = out.len();
        first.get_or_insert(id);
        if let Some(p) = parent {
            out[p].children.push(id);
        }
        let children = std::mem::take(&mut t.children);
        out.push(AstNode {
            id,
            node_type: t.node_type,
            parent,
            children: Vec::with_capacity(children.len()),
            source_order: t.tok,
            line: toks[t.tok.min(toks.len() - 1)].line,
            is_leaf: children.is_empty(),
            role: t.role,
            label: t.label,
            var_name: t.var_name,
        });
        for c in children.into_iter().rev() {
            stack.push((c, Some(id)));
        }
    }
    first.expect("tree has a root")
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    path: &'a str,
    warnings: Vec<String>,
    depth: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum BodyKind {
    Class,
    Interface,
    Annotation,
}

impl<'a> Parser<'a> {
    // ---- token plumbing -------------------------------------------------

    fn peek(&self, k: usize) -> &Token {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i]
    }

    fn at(&self, text: &str) -> bool {
        self.peek(0).is(text)
    }

    fn at_ident(&self) -> bool {
        self.peek(0).kind == TokenKind::Ident
    }

    fn at_ident_text(&self, text: &str) -> bool {
        self.at_ident() && self.peek(0).text == text
    }

    fn at_eof(&self) -> bool {
        self.peek(0).kind == TokenKind::Eof
    }

    fn eat(&mut self, text: &str) -> bool {
        if self.at(text) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            path: self.path.to_string(),
            line: self.peek(0).line,
            message: message.into(),
        }
    }

    fn unexpected(&self, wanted: &str) -> Error {
        let t = self.peek(0);
        let found = if t.kind == TokenKind::Eof {
            "end of file".to_string()
        } else {
            format!("`{}`", t.text)
        };
        self.error(format!("expected {wanted}, found {found}"))
    }

    fn expect(&mut self, text: &str) -> Result<usize> {
        if self.at(text) {
            self.pos += 1;
            Ok(self.pos - 1)
        } else {
            Err(self.unexpected(&format!("`{text}`")))
        }
    }

    fn ident(&mut self) -> Result<String> {
        if self.at_ident() {
            self.pos += 1;
            Ok(self.toks[self.pos - 1].text.clone())
        } else {
            Err(self.unexpected("identifier"))
        }
    }

    fn warn(&mut self, message: impl Into<String>) {
        let line = self.peek(0).line;
        self.warnings.push(format!("line {line}: {}", message.into()));
    }

    fn unmappable(&self, construct: &str) -> Error {
        Error::UnmappableConstruct {
            path: self.path.to_string(),
            line: self.peek(0).line,
            construct: construct.to_string(),
        }
    }

    /// Run `f`, rewinding the cursor and dropping its warnings on failure.
    fn attempt<T>(&mut self, f: impl FnOnce(&mut Self) -> Result<T>) -> Option<T> {
        let pos = self.pos;
        let warnings = self.warnings.len();
        let depth = self.depth;
        match f(self) {
            Ok(v) => Some(v),
            Err(_) => {
                self.pos = pos;
                self.warnings.truncate(warnings);
                self.depth = depth;
                None
            }
        }
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error("nesting too deep"));
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    fn qualified_name(&mut self) -> Result<String> {
        let mut name = self.ident()?;
        while self.at(".") && self.peek(1).kind == TokenKind::Ident {
            self.pos += 1;
            name.push('.');
            name.push_str(&self.ident()?);
        }
        Ok(name)
    }

    fn at_primitive(&self) -> bool {
        self.peek(0).kind == TokenKind::Keyword && PRIMITIVES.contains(&self.peek(0).text.as_str())
    }

    fn at_modifier(&self) -> bool {
        let t = self.peek(0);
        (t.kind == TokenKind::Keyword && MODIFIERS.contains(&t.text.as_str()))
            || (t.is("default") && !self.peek(1).is(":") && !self.peek(1).is("->"))
            || (t.kind == TokenKind::Ident && t.text == "sealed" && self.peek(1).kind != TokenKind::Op)
            || (t.is("@") && !self.peek(1).is("interface"))
    }

    fn at_type_decl(&self) -> bool {
        self.at("class")
            || self.at("interface")
            || self.at("enum")
            || (self.at("@") && self.peek(1).is("interface"))
            || self.at_record()
    }

    fn at_record(&self) -> bool {
        self.at_ident_text("record") && self.peek(1).kind == TokenKind::Ident && (self.peek(2).is("(") || self.peek(2).is("<"))
    }

    /// Glue `>` tokens written without spaces into one operator. Returns the
    /// operator text and how many tokens it spans.
    fn glued_gt(&self) -> Option<(String, usize)> {
        if !self.at(">") {
            return None;
        }
        let mut op = String::from(">");
        let mut n = 1;
        while n < 3 && self.peek(n - 1).joined && self.peek(n).is(">") {
            op.push('>');
            n += 1;
        }
        if self.peek(n - 1).joined && self.peek(n).is("=") {
            op.push('=');
            n += 1;
        }
        Some((op, n))
    }

    // ---- compilation unit and declarations -----------------------------

    fn compilation_unit(&mut self) -> Result<Tree> {
        let mut root = Tree::new(NodeType::CompilationUnit, 0);

        let save = self.pos;
        let annotations = self.annotations()?;
        if self.at("package") {
            let tok = self.toks.get(save).map(|_| save).unwrap_or(self.pos);
            self.pos += 1;
            let name = self.qualified_name()?;
            self.expect(";")?;
            let mut pkg = Tree::new(NodeType::PackageDeclaration, tok).labeled(name);
            pkg.children = annotations;
            root.push(pkg);
        } else {
            self.pos = save;
        }

        while self.at("import") {
            let tok = self.expect("import")?;
            let mut name = String::new();
            if self.eat("static") {
                name.push_str("static ");
            }
            name.push_str(&self.qualified_name()?);
            if self.eat(".") {
                self.expect("*")?;
                name.push_str(".*");
            }
            self.expect(";")?;
            root.push(Tree::new(NodeType::Import, tok).labeled(name));
        }

        while !self.at_eof() {
            if self.eat(";") {
                continue;
            }
            if self.at_ident_text("module") || self.at_ident_text("open") && self.peek(1).text == "module" {
                return Err(self.unmappable("module declaration"));
            }
            let tok = self.pos;
            let mods = self.modifiers()?;
            if self.at_type_decl() {
                root.push(self.type_decl(mods, tok)?);
            } else {
                self.warn("member declared outside any type; attached to the compilation unit");
                if let Some(member) = self.member_after_modifiers(mods, tok, BodyKind::Class)? {
                    root.push(member);
                }
            }
        }
        Ok(root)
    }

    fn annotations(&mut self) -> Result<Vec<Tree>> {
        let mut out = Vec::new();
        while self.at("@") && !self.peek(1).is("interface") {
            out.push(self.annotation()?);
        }
        Ok(out)
    }

    fn annotation(&mut self) -> Result<Tree> {
        let tok = self.expect("@")?;
        let name = self.qualified_name()?;
        let mut node = Tree::new(NodeType::Annotation, tok).labeled(name);
        if self.eat("(") {
            if self.at_ident() && self.peek(1).is("=") {
                loop {
                    let ptok = self.pos;
                    let key = self.ident()?;
                    self.expect("=")?;
                    let mut pair = Tree::new(NodeType::ElementValuePair, ptok).labeled(key);
                    pair.push(self.element_value()?);
                    node.push(pair);
                    if !self.eat(",") {
                        break;
                    }
                }
            } else if !self.at(")") {
                node.push(self.element_value()?);
            }
            self.expect(")")?;
        }
        Ok(node)
    }

    fn element_value(&mut self) -> Result<Tree> {
        if self.at("@") {
            return self.annotation();
        }
        if self.at("{") {
            let tok = self.expect("{")?;
            let mut arr = Tree::new(NodeType::ElementArrayValue, tok);
            while !self.at("}") {
                arr.push(self.element_value()?);
                if !self.eat(",") {
                    break;
                }
            }
            self.expect("}")?;
            return Ok(arr);
        }
        self.ternary()
    }

    fn modifiers(&mut self) -> Result<Vec<Tree>> {
        let mut out = Vec::new();
        while self.at_modifier() {
            if self.at("@") {
                out.push(self.annotation()?);
            } else {
                let tok = self.pos;
                let text = self.peek(0).text.clone();
                self.pos += 1;
                out.push(Tree::new(NodeType::Modifier, tok).labeled(text));
            }
        }
        Ok(out)
    }

    fn type_decl(&mut self, mods: Vec<Tree>, tok: usize) -> Result<Tree> {
        self.enter()?;
        let tree = if self.at("class") {
            self.class_decl(mods, tok)
        } else if self.at("interface") {
            self.interface_decl(mods, tok)
        } else if self.at("enum") {
            self.enum_decl(mods, tok)
        } else if self.at("@") {
            self.annotation_decl(mods, tok)
        } else if self.at_record() {
            self.record_decl(mods, tok)
        } else {
            Err(self.unexpected("type declaration"))
        };
        self.leave();
        tree
    }

    fn class_decl(&mut self, mods: Vec<Tree>, tok: usize) -> Result<Tree> {
        self.expect("class")?;
        let name = self.ident()?;
        let mut node = Tree::new(NodeType::ClassDeclaration, tok).labeled(name);
        node.children = mods;
        if self.at("<") {
            node.children.extend(self.type_parameters()?);
        }
        if self.eat("extends") {
            node.push(self.type_()?);
        }
        if self.eat("implements") {
            node.children.extend(self.type_list()?);
        }
        if self.at_ident_text("permits") {
            self.warn("`permits` clause ignored (sealed classes postdate Java 8)");
            self.pos += 1;
            self.type_list()?;
        }
        node.children.extend(self.class_body(BodyKind::Class)?);
        Ok(node)
    }

    fn record_decl(&mut self, mods: Vec<Tree>, tok: usize) -> Result<Tree> {
        self.warn("record declaration mapped to ClassDeclaration");
        self.pos += 1;
        let name = self.ident()?;
        let mut node = Tree::new(NodeType::ClassDeclaration, tok).labeled(name);
        node.children = mods;
        if self.at("<") {
            node.children.extend(self.type_parameters()?);
        }
        node.children.extend(self.formal_parameters()?);
        if self.eat("implements") {
            node.children.extend(self.type_list()?);
        }
        node.children.extend(self.class_body(BodyKind::Class)?);
        Ok(node)
    }

    fn interface_decl(&mut self, mods: Vec<Tree>, tok: usize) -> Result<Tree> {
        self.expect("interface")?;
        let name = self.ident()?;
        let mut node = Tree::new(NodeType::InterfaceDeclaration, tok).labeled(name);
        node.children = mods;
        if self.at("<") {
            node.children.extend(self.type_parameters()?);
        }
        if self.eat("extends") {
            node.children.extend(self.type_list()?);
        }
        if self.at_ident_text("permits") {
            self.warn("`permits` clause ignored (sealed interfaces postdate Java 8)");
            self.pos += 1;
            self.type_list()?;
        }
        node.children.extend(self.class_body(BodyKind::Interface)?);
        Ok(node)
    }

    fn enum_decl(&mut self, mods: Vec<Tree>, tok: usize) -> Result<Tree> {
        self.expect("enum")?;
        let name = self.ident()?;
        let mut node = Tree::new(NodeType::EnumDeclaration, tok).labeled(name);
        node.children = mods;
        if self.eat("implements") {
            node.children.extend(self.type_list()?);
        }
        let btok = self.expect("{")?;
        let mut body = Tree::new(NodeType::EnumBody, btok);
        while !self.at(";") && !self.at("}") {
            let ctok = self.pos;
            let annotations = self.annotations()?;
            let cname = self.ident()?;
            let mut constant = Tree::new(NodeType::EnumConstantDeclaration, ctok).labeled(cname);
            constant.children = annotations;
            if self.at("(") {
                constant.children.extend(self.arguments()?);
            }
            if self.at("{") {
                constant.children.extend(self.class_body(BodyKind::Class)?);
            }
            body.push(constant);
            if !self.eat(",") {
                break;
            }
        }
        if self.eat(";") {
            while !self.at("}") {
                if self.at_eof() {
                    return Err(self.unexpected("`}`"));
                }
                body.children.extend(self.member(BodyKind::Class)?);
            }
        }
        self.expect("}")?;
        node.push(body);
        Ok(node)
    }

    fn annotation_decl(&mut self, mods: Vec<Tree>, tok: usize) -> Result<Tree> {
        self.expect("@")?;
        self.expect("interface")?;
        let name = self.ident()?;
        let mut node = Tree::new(NodeType::AnnotationDeclaration, tok).labeled(name);
        node.children = mods;
        node.children.extend(self.class_body(BodyKind::Annotation)?);
        Ok(node)
    }

    fn type_list(&mut self) -> Result<Vec<Tree>> {
        let mut out = vec![self.type_()?];
        while self.eat(",") {
            out.push(self.type_()?);
        }
        Ok(out)
    }

    fn class_body(&mut self, kind: BodyKind) -> Result<Vec<Tree>> {
        self.expect("{")?;
        let mut members = Vec::new();
        while !self.at("}") {
            if self.at_eof() {
                return Err(self.unexpected("`}`"));
            }
            members.extend(self.member(kind)?);
        }
        self.expect("}")?;
        Ok(members)
    }

    fn member(&mut self, kind: BodyKind) -> Result<Option<Tree>> {
        if self.eat(";") {
            return Ok(None);
        }
        if self.at("{") {
            return self.block().map(Some);
        }
        if self.at("static") && self.peek(1).is("{") {
            self.pos += 1;
            return Ok(Some(self.block()?.labeled("static")));
        }
        let tok = self.pos;
        let mods = self.modifiers()?;
        if self.at_type_decl() {
            return self.type_decl(mods, tok).map(Some);
        }
        self.member_after_modifiers(mods, tok, kind)
    }

    fn member_after_modifiers(&mut self, mods: Vec<Tree>, tok: usize, kind: BodyKind) -> Result<Option<Tree>> {
        self.enter()?;
        let mut type_params = Vec::new();
        if self.at("<") {
            type_params = self.type_parameters()?;
        }

        // Constructor: `Name (`
        if self.at_ident() && self.peek(1).is("(") {
            let name = self.ident()?;
            let mut node = Tree::new(NodeType::ConstructorDeclaration, tok).labeled(name);
            node.children = mods;
            node.children.extend(type_params);
            node.children.extend(self.formal_parameters()?);
            self.throws_clause()?;
            node.push(self.block()?);
            self.leave();
            return Ok(Some(node));
        }

        let return_type = if self.eat("void") {
            None
        } else {
            Some(self.type_()?)
        };
        let name_tok = self.pos;
        let name = self.ident()?;

        if self.at("(") {
            let node_type = if kind == BodyKind::Annotation {
                NodeType::AnnotationMethod
            } else {
                NodeType::MethodDeclaration
            };
            let mut node = Tree::new(node_type, tok).labeled(name);
            node.children = mods;
            node.children.extend(type_params);
            node.children.extend(return_type);
            node.children.extend(self.formal_parameters()?);
            while self.at("[") && self.peek(1).is("]") {
                self.pos += 2;
            }
            self.throws_clause()?;
            if kind == BodyKind::Annotation && self.eat("default") {
                node.push(self.element_value()?);
            }
            if self.at("{") {
                node.push(self.block()?);
            } else {
                self.expect(";")?;
            }
            self.leave();
            return Ok(Some(node));
        }

        let Some(field_type) = return_type else {
            return Err(self.unexpected("`(`"));
        };
        let node_type = if kind == BodyKind::Class {
            NodeType::FieldDeclaration
        } else {
            NodeType::ConstantDeclaration
        };
        let mut node = Tree::new(node_type, tok);
        node.children = mods;
        node.push(field_type);
        node.children.extend(self.variable_declarators(name, name_tok)?);
        self.expect(";")?;
        self.leave();
        Ok(Some(node))
    }

    fn throws_clause(&mut self) -> Result<()> {
        if self.eat("throws") {
            self.annotations()?;
            self.qualified_name()?;
            while self.eat(",") {
                self.annotations()?;
                self.qualified_name()?;
            }
        }
        Ok(())
    }

    fn formal_parameters(&mut self) -> Result<Vec<Tree>> {
        self.expect("(")?;
        let mut out = Vec::new();
        if !self.at(")") {
            loop {
                out.push(self.formal_parameter()?);
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.expect(")")?;
        Ok(out)
    }

    fn formal_parameter(&mut self) -> Result<Tree> {
        let tok = self.pos;
        let mut node = Tree::new(NodeType::FormalParameter, tok);
        node.children = self.modifiers()?;
        node.push(self.type_()?);
        self.annotations()?;
        self.eat("...");
        let name = if self.eat("this") {
            "this".to_string()
        } else {
            self.ident()?
        };
        while self.at("[") && self.peek(1).is("]") {
            self.pos += 2;
        }
        node.var_name = Some(name.clone());
        Ok(node.labeled(name))
    }

    fn variable_declarators(&mut self, first: String, first_tok: usize) -> Result<Vec<Tree>> {
        let mut out = vec![self.variable_declarator_rest(first, first_tok)?];
        while self.eat(",") {
            let tok = self.pos;
            let name = self.ident()?;
            out.push(self.variable_declarator_rest(name, tok)?);
        }
        Ok(out)
    }

    fn variable_declarator_rest(&mut self, name: String, tok: usize) -> Result<Tree> {
        while self.at("[") && self.peek(1).is("]") {
            self.pos += 2;
        }
        let mut node = Tree::new(NodeType::VariableDeclarator, tok).labeled(name.clone());
        node.var_name = Some(name);
        if self.eat("=") {
            node.push(self.variable_initializer()?);
        }
        Ok(node)
    }

    fn variable_initializer(&mut self) -> Result<Tree> {
        if self.at("{") {
            self.array_initializer()
        } else {
            self.expression()
        }
    }

    fn array_initializer(&mut self) -> Result<Tree> {
        self.enter()?;
        let tok = self.expect("{")?;
        let mut node = Tree::new(NodeType::ArrayInitializer, tok);
        while !self.at("}") {
            node.push(self.variable_initializer()?);
            if !self.eat(",") {
                break;
            }
        }
        self.expect("}")?;
        self.leave();
        Ok(node)
    }

    // ---- types ----------------------------------------------------------

    fn type_(&mut self) -> Result<Tree> {
        self.annotations()?;
        if self.at_primitive() {
            let tok = self.pos;
            let mut name = self.peek(0).text.clone();
            self.pos += 1;
            name.push_str(&self.dims());
            return Ok(Tree::new(NodeType::BasicType, tok).labeled(name));
        }
        let mut node = self.reference_type()?;
        let dims = self.dims();
        if let Some(label) = node.label.as_mut() {
            label.push_str(&dims);
        }
        Ok(node)
    }

    fn dims(&mut self) -> String {
        let mut dims = String::new();
        loop {
            let save = self.pos;
            let _ = self.annotations();
            if self.at("[") && self.peek(1).is("]") {
                self.pos += 2;
                dims.push_str("[]");
            } else {
                self.pos = save;
                break;
            }
        }
        dims
    }

    fn reference_type(&mut self) -> Result<Tree> {
        let tok = self.pos;
        let mut name = self.ident()?;
        let mut args = Vec::new();
        if self.at("<") {
            args.extend(self.type_arguments()?);
        }
        while self.at(".") && (self.peek(1).kind == TokenKind::Ident || self.peek(1).is("@")) {
            self.pos += 1;
            self.annotations()?;
            name.push('.');
            name.push_str(&self.ident()?);
            if self.at("<") {
                args.extend(self.type_arguments()?);
            }
        }
        let mut node = Tree::new(NodeType::ReferenceType, tok).labeled(name);
        node.children = args;
        Ok(node)
    }

    fn type_arguments(&mut self) -> Result<Vec<Tree>> {
        self.enter()?;
        self.expect("<")?;
        let mut out = Vec::new();
        if !self.at(">") {
            loop {
                self.annotations()?;
                let tok = self.pos;
                if self.eat("?") {
                    let mut arg = Tree::new(NodeType::TypeArgument, tok);
                    if self.eat("extends") {
                        arg.label = Some("? extends".into());
                        arg.push(self.type_()?);
                    } else if self.eat("super") {
                        arg.label = Some("? super".into());
                        arg.push(self.type_()?);
                    } else {
                        arg.label = Some("?".into());
                    }
                    out.push(arg);
                } else {
                    let mut arg = Tree::new(NodeType::TypeArgument, tok);
                    arg.push(self.type_()?);
                    out.push(arg);
                }
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.expect(">")?;
        self.leave();
        Ok(out)
    }

    fn type_parameters(&mut self) -> Result<Vec<Tree>> {
        self.expect("<")?;
        let mut out = Vec::new();
        loop {
            self.annotations()?;
            let tok = self.pos;
            let name = self.ident()?;
            let mut param = Tree::new(NodeType::TypeParameter, tok).labeled(name);
            if self.eat("extends") {
                param.push(self.type_()?);
                while self.eat("&") {
                    param.push(self.type_()?);
                }
            }
            out.push(param);
            if !self.eat(",") {
                break;
            }
        }
        self.expect(">")?;
        Ok(out)
    }

    // ---- statements -----------------------------------------------------

    fn block(&mut self) -> Result<Tree> {
        self.enter()?;
        let tok = self.expect("{")?;
        let mut node = Tree::new(NodeType::BlockStatement, tok);
        while !self.at("}") {
            if self.at_eof() {
                return Err(self.unexpected("`}`"));
            }
            node.push(self.block_statement()?);
        }
        self.expect("}")?;
        self.leave();
        Ok(node)
    }

    /// `[mods] Type name` followed by something only a declarator allows.
    fn local_var_head(&mut self) -> Result<(Vec<Tree>, Tree, String, usize)> {
        let mods = self.modifiers()?;
        let ty = self.type_()?;
        let tok = self.pos;
        let name = self.ident()?;
        if !(self.at("=") || self.at(",") || self.at(";") || self.at("[") || self.at(":")) {
            return Err(self.unexpected("declarator"));
        }
        Ok((mods, ty, name, tok))
    }

    fn block_statement(&mut self) -> Result<Tree> {
        let tok = self.pos;
        if self.at_type_decl() {
            return self.type_decl(Vec::new(), tok);
        }
        let starts_decl = self.at_modifier() && !self.at("synchronized")
            || self.at_primitive() && !self.peek(1).is(".")
            || self.at_ident() && !self.peek(1).is(":");
        if starts_decl {
            if self.at_modifier() && !self.at("synchronized") {
                let save = self.pos;
                let mods = self.modifiers()?;
                if self.at_type_decl() {
                    return self.type_decl(mods, tok);
                }
                self.pos = save;
            }
            if let Some((mods, ty, name, ntok)) = self.attempt(|p| p.local_var_head()) {
                if self.at(":") {
                    return Err(self.unexpected("`;`"));
                }
                let mut node = Tree::new(NodeType::LocalVariableDeclaration, tok);
                node.children = mods;
                node.push(ty);
                node.children.extend(self.variable_declarators(name, ntok)?);
                self.expect(";")?;
                return Ok(node);
            }
        }
        self.statement()
    }

    fn statement(&mut self) -> Result<Tree> {
        self.enter()?;
        let s = self.statement_inner();
        self.leave();
        s
    }

    fn statement_inner(&mut self) -> Result<Tree> {
        let tok = self.pos;
        if self.at("{") {
            return self.block();
        }
        if self.eat(";") {
            return Ok(Tree::new(NodeType::Statement, tok));
        }
        if self.at_ident() && self.peek(1).is(":") {
            let label = self.ident()?;
            self.pos += 1;
            let mut inner = self.statement()?;
            if inner.label.is_none() {
                inner.label = Some(format!("{label}:"));
            }
            return Ok(inner);
        }
        let keyword = if self.peek(0).kind == TokenKind::Keyword {
            self.peek(0).text.clone()
        } else {
            String::new()
        };
        match keyword.as_str() {
            "if" => {
                self.pos += 1;
                let mut node = Tree::new(NodeType::IfStatement, tok);
                node.push(self.par_expression()?.with_role(Role::Condition));
                node.push(self.statement()?.with_role(Role::Then));
                if self.eat("else") {
                    node.push(self.statement()?.with_role(Role::Else));
                }
                Ok(node)
            }
            "while" => {
                self.pos += 1;
                let mut node = Tree::new(NodeType::WhileStatement, tok);
                node.push(self.par_expression()?.with_role(Role::Condition));
                node.push(self.statement()?.with_role(Role::Body));
                Ok(node)
            }
            "do" => {
                self.pos += 1;
                let mut node = Tree::new(NodeType::DoStatement, tok);
                node.push(self.statement()?.with_role(Role::Body));
                self.expect("while")?;
                node.push(self.par_expression()?.with_role(Role::Condition));
                self.expect(";")?;
                Ok(node)
            }
            "for" => self.for_statement(),
            "try" => self.try_statement(),
            "switch" => self.switch_statement(),
            "synchronized" => {
                self.pos += 1;
                let mut node = Tree::new(NodeType::SynchronizedStatement, tok);
                node.push(self.par_expression()?);
                node.push(self.block()?.with_role(Role::Body));
                Ok(node)
            }
            "return" => {
                self.pos += 1;
                let mut node = Tree::new(NodeType::ReturnStatement, tok);
                if !self.at(";") {
                    node.push(self.expression()?);
                }
                self.expect(";")?;
                Ok(node)
            }
            "throw" => {
                self.pos += 1;
                let mut node = Tree::new(NodeType::ThrowStatement, tok);
                node.push(self.expression()?);
                self.expect(";")?;
                Ok(node)
            }
            "break" | "continue" => {
                self.pos += 1;
                let node_type = if keyword == "break" {
                    NodeType::BreakStatement
                } else {
                    NodeType::ContinueStatement
                };
                let mut node = Tree::new(node_type, tok);
                if self.at_ident() {
                    node.label = Some(self.ident()?);
                }
                self.expect(";")?;
                Ok(node)
            }
            "assert" => {
                self.pos += 1;
                let mut node = Tree::new(NodeType::AssertStatement, tok);
                node.push(self.expression()?);
                if self.eat(":") {
                    node.push(self.expression()?);
                }
                self.expect(";")?;
                Ok(node)
            }
            "else" | "case" | "default" | "catch" | "finally" => Err(self.unexpected("statement")),
            _ => {
                if self.at_ident_text("yield") && !matches!(self.peek(1).text.as_str(), "=" | "(" | "." | "[" | "++" | "--") {
                    return Err(self.unmappable("yield statement"));
                }
                let mut node = Tree::new(NodeType::StatementExpression, tok);
                node.push(self.expression()?);
                self.expect(";")?;
                Ok(node)
            }
        }
    }

    fn par_expression(&mut self) -> Result<Tree> {
        self.expect("(")?;
        let e = self.expression()?;
        self.expect(")")?;
        Ok(e)
    }

    fn for_statement(&mut self) -> Result<Tree> {
        let tok = self.expect("for")?;
        self.expect("(")?;
        let mut node = Tree::new(NodeType::ForStatement, tok);
        let ctok = self.pos;

        let enhanced = self.attempt(|p| {
            let mods = p.modifiers()?;
            let ty = p.type_()?;
            let ntok = p.pos;
            let name = p.ident()?;
            p.expect(":")?;
            Ok((mods, ty, name, ntok))
        });

        if let Some((mods, ty, name, ntok)) = enhanced {
            let mut control = Tree::new(NodeType::EnhancedForControl, ctok);
            let mut var = Tree::new(NodeType::VariableDeclaration, ctok);
            var.children = mods;
            var.push(ty);
            let mut declarator = Tree::new(NodeType::VariableDeclarator, ntok).labeled(name.clone());
            declarator.var_name = Some(name);
            var.push(declarator);
            control.push(var);
            control.push(self.expression()?);
            node.push(control);
        } else {
            let mut control = Tree::new(NodeType::ForControl, ctok);
            if !self.at(";") {
                if let Some((mods, ty, name, ntok)) = self.attempt(|p| p.local_var_head()) {
                    let mut var = Tree::new(NodeType::VariableDeclaration, ctok).with_role(Role::Init);
                    var.children = mods;
                    var.push(ty);
                    var.children.extend(self.variable_declarators(name, ntok)?);
                    control.push(var);
                } else {
                    loop {
                        control.push(self.expression()?.with_role(Role::Init));
                        if !self.eat(",") {
                            break;
                        }
                    }
                }
            }
            self.expect(";")?;
            if !self.at(";") {
                control.push(self.expression()?.with_role(Role::Condition));
            }
            self.expect(";")?;
            if !self.at(")") {
                loop {
                    control.push(self.expression()?.with_role(Role::Update));
                    if !self.eat(",") {
                        break;
                    }
                }
            }
            node.push(control);
        }
        self.expect(")")?;
        node.push(self.statement()?.with_role(Role::Body));
        Ok(node)
    }

    fn try_statement(&mut self) -> Result<Tree> {
        let tok = self.expect("try")?;
        let mut node = Tree::new(NodeType::TryStatement, tok);
        let mut has_resources = false;
        if self.eat("(") {
            has_resources = true;
            while !self.at(")") {
                let rtok = self.pos;
                let declared = self.attempt(|p| {
                    let mods = p.modifiers()?;
                    let ty = p.type_()?;
                    let name = p.ident()?;
                    p.expect("=")?;
                    Ok((mods, ty, name))
                });
                let mut resource = Tree::new(NodeType::TryResource, rtok);
                if let Some((mods, ty, name)) = declared {
                    resource.children = mods;
                    resource.push(ty);
                    resource.label = Some(name.clone());
                    resource.var_name = Some(name);
                } else {
                    self.warn("try-with-resources on an existing variable (Java 9)");
                }
                resource.push(self.expression()?);
                node.push(resource);
                if !self.eat(";") {
                    break;
                }
            }
            self.expect(")")?;
        }
        node.push(self.block()?.with_role(Role::Body));
        let mut handlers = 0;
        while self.at("catch") {
            let ctok = self.expect("catch")?;
            self.expect("(")?;
            let ptok = self.pos;
            let mods = self.modifiers()?;
            let mut types = self.qualified_name()?;
            while self.eat("|") {
                types.push('|');
                types.push_str(&self.qualified_name()?);
            }
            let name = self.ident()?;
            self.expect(")")?;
            let mut param = Tree::new(NodeType::CatchClauseParameter, ptok).labeled(types);
            param.children = mods;
            param.var_name = Some(name);
            let mut clause = Tree::new(NodeType::CatchClause, ctok);
            clause.push(param);
            clause.push(self.block()?);
            node.push(clause);
            handlers += 1;
        }
        if self.eat("finally") {
            node.push(self.block()?.labeled("finally"));
            handlers += 1;
        }
        if handlers == 0 && !has_resources {
            return Err(self.error("`try` without `catch` or `finally`"));
        }
        Ok(node)
    }

    fn switch_statement(&mut self) -> Result<Tree> {
        let tok = self.expect("switch")?;
        let mut node = Tree::new(NodeType::SwitchStatement, tok);
        node.push(self.par_expression()?.with_role(Role::Condition));
        self.expect("{")?;
        while !self.at("}") {
            if self.at_eof() {
                return Err(self.unexpected("`}`"));
            }
            let ctok = self.pos;
            let mut case = Tree::new(NodeType::SwitchStatementCase, ctok);
            let mut arrow = false;
            while self.at("case") || self.at("default") {
                if self.eat("default") {
                    case.label = Some("default".into());
                } else {
                    self.pos += 1;
                    loop {
                        case.push(self.ternary()?.with_role(Role::CaseLabel));
                        if !self.eat(",") {
                            break;
                        }
                    }
                }
                if self.eat("->") {
                    arrow = true;
                    break;
                }
                self.expect(":")?;
            }
            if case.children.is_empty() && case.label.is_none() {
                return Err(self.unexpected("`case` or `default`"));
            }
            if arrow {
                self.warn("arrow-form switch case (Java 14)");
                let body = if self.at("{") || self.at("throw") {
                    self.statement()?
                } else {
                    let stok = self.pos;
                    let mut s = Tree::new(NodeType::StatementExpression, stok);
                    s.push(self.expression()?);
                    self.expect(";")?;
                    s
                };
                case.push(body.with_role(Role::CaseStatement));
            } else {
                while !self.at("case") && !self.at("default") && !self.at("}") {
                    if self.at_eof() {
                        return Err(self.unexpected("`}`"));
                    }
                    case.push(self.block_statement()?.with_role(Role::CaseStatement));
                }
            }
            node.push(case);
        }
        self.expect("}")?;
        Ok(node)
    }

    // ---- expressions ----------------------------------------------------

    fn expression(&mut self) -> Result<Tree> {
        self.enter()?;
        let e = self.expression_inner();
        self.leave();
        e
    }

    fn expression_inner(&mut self) -> Result<Tree> {
        if self.lambda_ahead() {
            return self.lambda();
        }
        let lhs = self.ternary()?;
        let op = if let Some((op, n)) = self.glued_gt() {
            if op == ">>=" || op == ">>>=" {
                self.pos += n;
                Some(op)
            } else {
                None
            }
        } else if self.peek(0).kind == TokenKind::Op && ASSIGN_OPS.contains(&self.peek(0).text.as_str()) {
            let op = self.peek(0).text.clone();
            self.pos += 1;
            Some(op)
        } else {
            None
        };
        match op {
            Some(op) => {
                let mut node = Tree::new(NodeType::Assignment, lhs.tok).labeled(op);
                node.push(lhs);
                node.push(self.expression()?);
                Ok(node)
            }
            None => Ok(lhs),
        }
    }

    fn matching_paren(&self, open: usize) -> Option<usize> {
        let mut depth = 0usize;
        let mut i = open;
        while i < self.toks.len() {
            let t = &self.toks[i];
            if t.is("(") {
                depth += 1;
            } else if t.is(")") {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            } else if t.kind == TokenKind::Eof {
                return None;
            }
            i += 1;
        }
        None
    }

    fn lambda_ahead(&self) -> bool {
        if self.at_ident() && self.peek(1).is("->") {
            return true;
        }
        if self.at("(") {
            if let Some(close) = self.matching_paren(self.pos) {
                return self.toks.get(close + 1).is_some_and(|t| t.is("->"));
            }
        }
        false
    }

    fn lambda(&mut self) -> Result<Tree> {
        let tok = self.pos;
        let mut node = Tree::new(NodeType::LambdaExpression, tok);
        if self.at_ident() {
            let name = self.ident()?;
            let mut p = Tree::new(NodeType::InferredFormalParameter, tok).labeled(name.clone());
            p.var_name = Some(name);
            node.push(p);
        } else {
            let close = self.matching_paren(self.pos).ok_or_else(|| self.unexpected("`)`"))?;
            let inner = &self.toks[self.pos + 1..close];
            let inferred = inner
                .iter()
                .enumerate()
                .all(|(i, t)| if i % 2 == 0 { t.kind == TokenKind::Ident } else { t.is(",") });
            if inferred {
                self.pos += 1;
                while !self.at(")") {
                    let ptok = self.pos;
                    let name = self.ident()?;
                    let mut p = Tree::new(NodeType::InferredFormalParameter, ptok).labeled(name.clone());
                    p.var_name = Some(name);
                    node.push(p);
                    self.eat(",");
                }
                self.expect(")")?;
            } else {
                node.children.extend(self.formal_parameters()?);
            }
        }
        self.expect("->")?;
        if self.at("{") {
            node.push(self.block()?.with_role(Role::Body));
        } else {
            node.push(self.expression()?.with_role(Role::Body));
        }
        Ok(node)
    }

    fn ternary(&mut self) -> Result<Tree> {
        let cond = self.binary(0)?;
        if !self.at("?") {
            return Ok(cond);
        }
        self.pos += 1;
        let mut node = Tree::new(NodeType::TernaryExpression, cond.tok);
        node.push(cond.with_role(Role::Condition));
        node.push(self.expression()?);
        self.expect(":")?;
        if self.lambda_ahead() {
            node.push(self.lambda()?);
        } else {
            node.push(self.ternary()?);
        }
        Ok(node)
    }

    fn binary_op(&self) -> Option<(String, usize, u8)> {
        if let Some((op, n)) = self.glued_gt() {
            let prec = match op.as_str() {
                ">" | ">=" => 7,
                ">>" | ">>>" => 8,
                _ => return None,
            };
            return Some((op, n, prec));
        }
        let t = self.peek(0);
        if t.kind != TokenKind::Op && !t.is("instanceof") {
            return None;
        }
        let prec = match t.text.as_str() {
            "||" => 1,
            "&&" => 2,
            "|" => 3,
            "^" => 4,
            "&" => 5,
            "==" | "!=" => 6,
            "<" | "<=" | "instanceof" => 7,
            "<<" => 8,
            "+" | "-" => 9,
            "*" | "/" | "%" => 10,
            _ => return None,
        };
        Some((t.text.clone(), 1, prec))
    }

    fn binary(&mut self, min_prec: u8) -> Result<Tree> {
        self.enter()?;
        let mut lhs = self.unary()?;
        while let Some((op, n, prec)) = self.binary_op() {
            if prec < min_prec {
                break;
            }
            self.pos += n;
            let mut node = Tree::new(NodeType::BinaryOperation, lhs.tok).labeled(op.clone());
            node.push(lhs);
            if op == "instanceof" {
                self.eat("final");
                node.push(self.type_()?);
                if self.at_ident() {
                    self.warn("instanceof pattern binding (Java 16) ignored");
                    self.pos += 1;
                }
            } else {
                node.push(self.binary(prec + 1)?);
            }
            lhs = node;
        }
        self.leave();
        Ok(lhs)
    }

    fn cast_operand_follows(&self) -> bool {
        let t = self.peek(0);
        match t.kind {
            TokenKind::Ident
            | TokenKind::IntLiteral
            | TokenKind::FloatLiteral
            | TokenKind::CharLiteral
            | TokenKind::StringLiteral
            | TokenKind::TextBlock => true,
            TokenKind::Keyword => matches!(
                t.text.as_str(),
                "this" | "super" | "new" | "true" | "false" | "null" | "switch"
            ) || PRIMITIVES.contains(&t.text.as_str()),
            TokenKind::Op => matches!(t.text.as_str(), "(" | "!" | "~"),
            TokenKind::Eof => false,
        }
    }

    fn unary(&mut self) -> Result<Tree> {
        self.enter()?;
        let u = self.unary_inner();
        self.leave();
        u
    }

    fn unary_inner(&mut self) -> Result<Tree> {
        let tok = self.pos;
        let t = self.peek(0);
        if t.kind == TokenKind::Op && matches!(t.text.as_str(), "++" | "--" | "!" | "~" | "+" | "-") {
            let op = t.text.clone();
            self.pos += 1;
            let mut operand = self.unary()?;
            operand.label = Some(format!("{op}{}", operand.label.take().unwrap_or_default()));
            return Ok(operand);
        }
        if self.at("(") {
            if self.peek(1).kind == TokenKind::Keyword && PRIMITIVES.contains(&self.peek(1).text.as_str()) {
                if let Some(ty) = self.attempt(|p| {
                    p.expect("(")?;
                    let ty = p.type_()?;
                    p.expect(")")?;
                    Ok(ty)
                }) {
                    let mut node = Tree::new(NodeType::Cast, tok);
                    node.push(ty);
                    node.push(self.unary()?);
                    return Ok(node);
                }
            } else if self.peek(1).kind == TokenKind::Ident && !self.lambda_ahead() {
                let types = self.attempt(|p| {
                    p.expect("(")?;
                    let mut types = vec![p.type_()?];
                    while p.eat("&") {
                        types.push(p.type_()?);
                    }
                    p.expect(")")?;
                    if !(p.cast_operand_follows() || p.lambda_ahead()) {
                        return Err(p.unexpected("cast operand"));
                    }
                    Ok(types)
                });
                if let Some(types) = types {
                    let mut node = Tree::new(NodeType::Cast, tok);
                    node.children = types;
                    if self.lambda_ahead() {
                        node.push(self.lambda()?);
                    } else {
                        node.push(self.unary()?);
                    }
                    return Ok(node);
                }
            }
        }
        let mut e = self.primary()?;
        while self.at("++") || self.at("--") {
            let op = self.peek(0).text.clone();
            self.pos += 1;
            e.label = Some(format!("{}{op}", e.label.take().unwrap_or_default()));
        }
        Ok(e)
    }

    fn arguments(&mut self) -> Result<Vec<Tree>> {
        self.expect("(")?;
        let mut out = Vec::new();
        if !self.at(")") {
            loop {
                out.push(self.expression()?);
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.expect(")")?;
        Ok(out)
    }

    fn skip_type_arguments(&mut self) -> Result<()> {
        if self.at("<") {
            self.type_arguments()?;
        }
        Ok(())
    }

    fn primary(&mut self) -> Result<Tree> {
        let e = self.primary_inner()?;
        let e = self.selectors(e)?;
        self.method_references(e)
    }

    fn method_references(&mut self, mut e: Tree) -> Result<Tree> {
        while self.at("::") {
            self.pos += 1;
            self.skip_type_arguments()?;
            let name = if self.eat("new") { "new".to_string() } else { self.ident()? };
            let mut node = Tree::new(NodeType::MethodReference, e.tok).labeled(name);
            node.push(e);
            e = node;
        }
        Ok(e)
    }

    fn primary_inner(&mut self) -> Result<Tree> {
        let tok = self.pos;
        let t = self.peek(0).clone();
        match t.kind {
            TokenKind::IntLiteral | TokenKind::FloatLiteral | TokenKind::CharLiteral | TokenKind::StringLiteral => {
                self.pos += 1;
                return Ok(Tree::new(NodeType::Literal, tok).labeled(t.text));
            }
            TokenKind::TextBlock => {
                self.warn("text block literal (Java 15)");
                self.pos += 1;
                return Ok(Tree::new(NodeType::Literal, tok).labeled(t.text));
            }
            TokenKind::Eof => return Err(self.unexpected("expression")),
            _ => {}
        }

        if t.kind == TokenKind::Keyword {
            match t.text.as_str() {
                "true" | "false" | "null" => {
                    self.pos += 1;
                    return Ok(Tree::new(NodeType::Literal, tok).labeled(t.text));
                }
                "this" => {
                    self.pos += 1;
                    if self.at("(") {
                        let mut node = Tree::new(NodeType::ExplicitConstructorInvocation, tok);
                        node.children = self.arguments()?;
                        return Ok(node);
                    }
                    return Ok(Tree::new(NodeType::This, tok));
                }
                "super" => {
                    self.pos += 1;
                    return self.super_suffix(tok, None);
                }
                "new" => return self.creator(None),
                "void" => {
                    self.pos += 1;
                    self.expect(".")?;
                    self.expect("class")?;
                    return Ok(Tree::new(NodeType::VoidClassReference, tok));
                }
                "switch" => return Err(self.unmappable("switch expression")),
                _ if PRIMITIVES.contains(&t.text.as_str()) => {
                    let ty = self.type_()?;
                    if self.eat("::") {
                        self.expect("new")?;
                        let mut node = Tree::new(NodeType::MethodReference, tok).labeled("new");
                        node.push(ty);
                        return Ok(node);
                    }
                    self.expect(".")?;
                    self.expect("class")?;
                    let mut node = Tree::new(NodeType::ClassReference, tok);
                    node.push(ty);
                    return Ok(node);
                }
                _ => return Err(self.unexpected("expression")),
            }
        }

        if self.at("(") {
            self.pos += 1;
            let e = self.expression()?;
            self.expect(")")?;
            return Ok(e);
        }

        if self.at("<") {
            self.type_arguments()?;
            if self.eat("this") {
                let mut node = Tree::new(NodeType::ExplicitConstructorInvocation, tok);
                node.children = self.arguments()?;
                return Ok(node);
            }
            let name = self.ident()?;
            let mut node = Tree::new(NodeType::MethodInvocation, tok).labeled(name);
            node.children = self.arguments()?;
            return Ok(node);
        }

        if !self.at_ident() {
            return Err(self.unexpected("expression"));
        }

        // Generic type before a method reference: `List<String>::size`.
        if self.peek(1).is("<") {
            if let Some(ty) = self.attempt(|p| {
                let ty = p.type_()?;
                if !p.at("::") {
                    return Err(p.unexpected("`::`"));
                }
                Ok(ty)
            }) {
                return Ok(ty);
            }
        }

        let mut parts = vec![self.ident()?];
        while self.at(".") && self.peek(1).kind == TokenKind::Ident {
            self.pos += 1;
            parts.push(self.ident()?);
        }
        let qualifier = parts[..parts.len() - 1].join(".");
        let root = parts[0].clone();
        let full = parts.join(".");

        if self.at("(") {
            let mut node = Tree::new(NodeType::MethodInvocation, tok).labeled(full);
            if parts.len() > 1 {
                node.var_name = Some(root);
            }
            node.children = self.arguments()?;
            return Ok(node);
        }
        if self.at("[") && self.peek(1).is("]") {
            let dims = self.dims();
            let ty = Tree::new(NodeType::ReferenceType, tok).labeled(format!("{full}{dims}"));
            if self.eat("::") {
                self.expect("new")?;
                let mut node = Tree::new(NodeType::MethodReference, tok).labeled("new");
                node.push(ty);
                return Ok(node);
            }
            self.expect(".")?;
            self.expect("class")?;
            let mut node = Tree::new(NodeType::ClassReference, tok);
            node.push(ty);
            return Ok(node);
        }
        if self.at(".") {
            let next = self.peek(1);
            if next.is("class") {
                self.pos += 2;
                let mut node = Tree::new(NodeType::ClassReference, tok);
                node.push(Tree::new(NodeType::ReferenceType, tok).labeled(full));
                return Ok(node);
            }
            if next.is("this") {
                self.pos += 2;
                return Ok(Tree::new(NodeType::This, tok).labeled(full));
            }
            if next.is("super") {
                self.pos += 2;
                return self.super_suffix(tok, Some(full));
            }
            if next.is("new") {
                self.pos += 1;
                let mut creator = self.creator(Some(tok))?;
                creator.var_name = Some(root);
                return Ok(creator);
            }
            if next.is("<") {
                self.pos += 1;
                self.type_arguments()?;
                let name = self.ident()?;
                let mut node = Tree::new(NodeType::MethodInvocation, tok).labeled(format!("{full}.{name}"));
                node.var_name = Some(root);
                node.children = self.arguments()?;
                return Ok(node);
            }
        }
        let mut node = Tree::new(NodeType::MemberReference, tok).labeled(full);
        let _ = qualifier;
        node.var_name = Some(root);
        Ok(node)
    }

    fn super_suffix(&mut self, tok: usize, qualifier: Option<String>) -> Result<Tree> {
        let prefix = qualifier.map(|q| format!("{q}.super")).unwrap_or_else(|| "super".into());
        if self.at("(") {
            let mut node = Tree::new(NodeType::SuperConstructorInvocation, tok);
            node.children = self.arguments()?;
            return Ok(node);
        }
        if self.at("::") {
            self.pos += 1;
            let name = self.ident()?;
            return Ok(Tree::new(NodeType::MethodReference, tok).labeled(format!("{prefix}::{name}")));
        }
        self.expect(".")?;
        self.skip_type_arguments()?;
        let name = self.ident()?;
        if self.at("(") {
            let mut node = Tree::new(NodeType::SuperMethodInvocation, tok).labeled(name);
            node.children = self.arguments()?;
            Ok(node)
        } else {
            Ok(Tree::new(NodeType::SuperMemberReference, tok).labeled(name))
        }
    }

    /// `new` creator. With `outer` set, the caller consumed `expr .` and this
    /// builds an `InnerClassCreator`.
    fn creator(&mut self, outer: Option<usize>) -> Result<Tree> {
        self.enter()?;
        let new_tok = self.expect("new")?;
        let tok = outer.unwrap_or(new_tok);
        self.skip_type_arguments()?;
        let base = if self.at_primitive() {
            let t = self.pos;
            let name = self.peek(0).text.clone();
            self.pos += 1;
            Tree::new(NodeType::BasicType, t).labeled(name)
        } else {
            self.annotations()?;
            self.reference_type()?
        };

        let node = if self.at("[") {
            let mut node = Tree::new(NodeType::ArrayCreator, tok);
            node.push(base);
            while self.at("[") {
                self.pos += 1;
                if !self.eat("]") {
                    node.push(self.expression()?);
                    self.expect("]")?;
                }
            }
            if self.at("{") {
                node.push(self.array_initializer()?);
            }
            node
        } else {
            let node_type = if outer.is_some() {
                NodeType::InnerClassCreator
            } else {
                NodeType::ClassCreator
            };
            let mut node = Tree::new(node_type, tok);
            node.push(base);
            node.children.extend(self.arguments()?);
            if self.at("{") {
                node.children.extend(self.class_body(BodyKind::Class)?);
            }
            node
        };
        self.leave();
        Ok(node)
    }

    fn selectors(&mut self, mut e: Tree) -> Result<Tree> {
        loop {
            if self.at(".") {
                let stok = self.pos + 1;
                let next = self.peek(1).clone();
                if next.kind == TokenKind::Ident {
                    self.pos += 1;
                    let name = self.ident()?;
                    if self.at("(") {
                        let mut call = Tree::new(NodeType::MethodInvocation, stok).labeled(name);
                        call.children = self.arguments()?;
                        e.push(call);
                    } else {
                        e.push(Tree::new(NodeType::MemberReference, stok).labeled(name));
                    }
                } else if next.is("<") {
                    self.pos += 1;
                    self.type_arguments()?;
                    let name = self.ident()?;
                    let mut call = Tree::new(NodeType::MethodInvocation, stok).labeled(name);
                    call.children = self.arguments()?;
                    e.push(call);
                } else if next.is("new") {
                    self.pos += 1;
                    let creator = self.creator(Some(stok))?;
                    e.push(creator);
                } else if next.is("super") {
                    self.pos += 2;
                    let s = self.super_suffix(stok, None)?;
                    e.push(s);
                } else if next.is("this") {
                    self.pos += 2;
                    e.push(Tree::new(NodeType::This, stok));
                } else {
                    return Err(self.unexpected("member name"));
                }
            } else if self.at("[") {
                let stok = self.pos;
                self.pos += 1;
                let mut sel = Tree::new(NodeType::ArraySelector, stok);
                sel.push(self.expression()?);
                self.expect("]")?;
                e.push(sel);
            } else {
                return Ok(e);
            }
        }
    }
}
