from itertools import combinations
def ko(n,l,k):
    X=list(range(n)); Y=[frozenset(F) for F in combinations(X,l)]
    V=[('x',i) for i in X]+[('y',F) for F in Y]
    adj={v:set() for v in V}
    for F in Y:
        for i in F: adj[('x',i)].add(('y',F)); adj[('y',F)].add(('x',i))
    N=len(V); cnt=0
    sizes={N//2, (N+1)//2}
    for s in sizes:
        for A in combinations(V,s):
            A=set(A); B=set(V)-A; ok=True
            for v in V:
                own = A if v in A else B
                if len(adj[v]&own)<k or (v in A and len(adj[v]&B)<k): ok=False;break
            if ok: return True,cnt
            cnt+=1
    return False,cnt
print(ko(4,2,1), ko(5,2,1), ko(4,2,0))
