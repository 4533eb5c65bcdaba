//! The closed node-type vocabulary and its seven-way category partition.
//!
//! The table below is the single source of truth: ordinals fix the one-hot
//! position of every type and category, and `categorize` reads the same rows
//! that `canonical_taxonomy` returns.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Number of node types in the vocabulary.
pub const NODE_TYPE_COUNT: usize = 72;

/// Number of node categories.
pub const CATEGORY_COUNT: usize = 7;

/// Coarse role of a node type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Declarations,
    TypesAndReferences,
    ControlFlow,
    ExpressionsAndOperations,
    CodeStructure,
    Exceptions,
    LiteralsAndConstants,
}

impl Category {
    pub const ALL: [Category; CATEGORY_COUNT] = [
        Category::Declarations,
        Category::TypesAndReferences,
        Category::ControlFlow,
        Category::ExpressionsAndOperations,
        Category::CodeStructure,
        Category::Exceptions,
        Category::LiteralsAndConstants,
    ];

    pub fn ordinal(self) -> usize {
        self as usize
    }

    pub fn from_ordinal(ordinal: usize) -> Option<Category> {
        Self::ALL.get(ordinal).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            Category::Declarations => "declarations",
            Category::TypesAndReferences => "types_and_references",
            Category::ControlFlow => "control_flow",
            Category::ExpressionsAndOperations => "expressions_and_operations",
            Category::CodeStructure => "code_structure",
            Category::Exceptions => "exceptions",
            Category::LiteralsAndConstants => "literals_and_constants",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Category::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "category",
                name: s.to_string(),
            })
    }
}

macro_rules! node_types {
    ($($variant:ident => $category:ident,)*) => {
        /// One of the 72 syntax node types. Declaration order is the one-hot
        /// ordinal.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum NodeType {
            $($variant,)*
        }

        impl NodeType {
            pub const ALL: [NodeType; NODE_TYPE_COUNT] = [$(NodeType::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(NodeType::$variant => stringify!($variant),)*
                }
            }

            const fn table_category(self) -> Category {
                match self {
                    $(NodeType::$variant => Category::$category,)*
                }
            }
        }
    };
}

// Rows in table order; the duplicate CompilationUnit row (declarations) is
// dropped, keeping its first occurrence.
node_types! {
    AnnotationMethod => Declarations,
    InferredFormalParameter => Declarations,
    LocalVariableDeclaration => Declarations,
    SuperConstructorInvocation => ExpressionsAndOperations,
    Import => CodeStructure,
    ArraySelector => TypesAndReferences,
    BreakStatement => ControlFlow,
    FieldDeclaration => Declarations,
    EnumDeclaration => Declarations,
    ConstructorDeclaration => Declarations,
    Annotation => CodeStructure,
    ReferenceType => TypesAndReferences,
    EnhancedForControl => ControlFlow,
    TypeParameter => Declarations,
    Statement => ControlFlow,
    CompilationUnit => CodeStructure,
    EnumConstantDeclaration => LiteralsAndConstants,
    IfStatement => ControlFlow,
    ClassCreator => CodeStructure,
    SwitchStatement => ControlFlow,
    EnumBody => CodeStructure,
    PackageDeclaration => CodeStructure,
    Cast => TypesAndReferences,
    VariableDeclaration => Declarations,
    ArrayCreator => TypesAndReferences,
    This => TypesAndReferences,
    MethodReference => ExpressionsAndOperations,
    InnerClassCreator => CodeStructure,
    InterfaceDeclaration => Declarations,
    FormalParameter => Declarations,
    CatchClauseParameter => Exceptions,
    SynchronizedStatement => ControlFlow,
    VoidClassReference => TypesAndReferences,
    TypeArgument => TypesAndReferences,
    DoStatement => ControlFlow,
    Assignment => ExpressionsAndOperations,
    ContinueStatement => ControlFlow,
    AssertStatement => Exceptions,
    ExplicitConstructorInvocation => Declarations,
    AnnotationDeclaration => Declarations,
    StringLiteralExpr => LiteralsAndConstants,
    PrimitiveType => TypesAndReferences,
    TryStatement => ControlFlow,
    ElementArrayValue => CodeStructure,
    BlockStatement => CodeStructure,
    ClassReference => TypesAndReferences,
    ReturnStatement => ControlFlow,
    IntegerLiteralExpr => LiteralsAndConstants,
    TernaryExpression => ExpressionsAndOperations,
    VariableDeclarator => Declarations,
    BinaryOperation => ExpressionsAndOperations,
    ClassDeclaration => Declarations,
    TryResource => Exceptions,
    MemberReference => ExpressionsAndOperations,
    SuperMemberReference => ExpressionsAndOperations,
    Literal => LiteralsAndConstants,
    CatchClause => Exceptions,
    WhileStatement => ControlFlow,
    ElementValuePair => CodeStructure,
    ForStatement => ControlFlow,
    StatementExpression => ExpressionsAndOperations,
    ConstantDeclaration => Declarations,
    ArrayInitializer => TypesAndReferences,
    MethodInvocation => ExpressionsAndOperations,
    Modifier => Declarations,
    ThrowStatement => ControlFlow,
    LambdaExpression => ExpressionsAndOperations,
    SwitchStatementCase => CodeStructure,
    MethodDeclaration => Declarations,
    BasicType => TypesAndReferences,
    SuperMethodInvocation => ExpressionsAndOperations,
    ForControl => ControlFlow,
}

impl NodeType {
    pub fn ordinal(self) -> usize {
        self as usize
    }

    pub fn from_ordinal(ordinal: usize) -> Option<NodeType> {
        Self::ALL.get(ordinal).copied()
    }

    pub fn category(self) -> Category {
        self.table_category()
    }

    /// Statement-level types: the units that `next_stmt` edges chain.
    pub fn is_statement(self) -> bool {
        matches!(
            self,
            NodeType::Statement
                | NodeType::IfStatement
                | NodeType::WhileStatement
                | NodeType::DoStatement
                | NodeType::ForStatement
                | NodeType::SwitchStatement
                | NodeType::TryStatement
                | NodeType::SynchronizedStatement
                | NodeType::ReturnStatement
                | NodeType::ThrowStatement
                | NodeType::BreakStatement
                | NodeType::ContinueStatement
                | NodeType::AssertStatement
                | NodeType::BlockStatement
                | NodeType::StatementExpression
                | NodeType::LocalVariableDeclaration
                | NodeType::ClassDeclaration
                | NodeType::InterfaceDeclaration
                | NodeType::EnumDeclaration
        )
    }
}

impl fmt::Display for NodeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NodeType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NodeType::ALL
            .iter()
            .copied()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "node type",
                name: s.to_string(),
            })
    }
}

impl Serialize for NodeType {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for NodeType {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The full deduplicated type → category table in ordinal order.
pub fn canonical_taxonomy() -> Vec<(NodeType, Category)> {
    NodeType::ALL.iter().map(|&t| (t, t.category())).collect()
}

/// Category of a node type.
pub fn categorize(node_type: NodeType) -> Category {
    node_type.category()
}
