"""Independent oracle for trace polynomials (sympy).

Uses x = [[s,-1],[1,0]], y = [[0,r],[-1/r,t]], so tr x = s, tr y = t and
tr xy = r + 1/r. The trace of a word is then a Laurent polynomial in r,
symmetric under r -> 1/r, and r^k + r^-k = D_k(u) rewrites it in (s, t, u).

Run: python3 trace_oracle.py
"""
import sympy as sp
s,t,r,u=sp.symbols('s t r u')
X=sp.Matrix([[s,-1],[1,0]]); Y=sp.Matrix([[0,r],[-1/r,t]])
Xi=X.inv(); Yi=Y.inv()
def word(spec):
    M=sp.eye(2)
    for g,e in spec:
        B={'x':(X,Xi),'y':(Y,Yi)}[g]
        for _ in range(abs(e)): M=M*(B[0] if e>0 else B[1])
    return M
def D(k):
    a,b=sp.Integer(2),u
    if k==0: return a
    for _ in range(k-1): a,b=b,sp.expand(u*b-a)
    return b
def P(spec):
    tr=sp.expand(sp.simplify(word(spec).trace()))
    num,den=sp.fraction(sp.together(tr))
    # den is r^k
    k=sp.degree(den,r)
    poly=sp.Poly(sp.expand(num),r)
    out=0
    coeffs={m[0]-k:c for m,c in zip(poly.monoms(),poly.coeffs())}
    for e,c in coeffs.items():
        assert sp.simplify(c-coeffs.get(-e,0))==0
        if e>0: out+=c*D(e)
        elif e==0: out+=c
    return sp.expand(out)
cases={
 "[x^2,y]":[('x',2),('y',1),('x',-2),('y',-1)],
 "[x,y^2]":[('x',1),('y',2),('x',-1),('y',-2)],
 "[x^2,y^2]":[('x',2),('y',2),('x',-2),('y',-2)],
 "x^2y^2":[('x',2),('y',2)],
 "xy^-1":[('x',1),('y',-1)],
 "x^3y":[('x',3),('y',1)],
 "xyx^-1y^2":[('x',1),('y',1),('x',-1),('y',2)],
 "x^2yx^-1y^-1":[('x',2),('y',1),('x',-1),('y',-1)],
}
for k,v in cases.items():
    print(k,"=>",str(P(v)).replace('**','^'))
