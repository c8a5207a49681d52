package org.shop;

import static org.junit.Assert.*;

public class SearchTest {
    private final CatalogFixture fixture = new CatalogFixture(74);
    // catalog step 0: load load verify verify load assert verify stub
    // catalog step 1: load setup load reset mock stub mock verify
    // catalog step 2: mock stub setup verify verify mock reset stub
    // catalog step 3: mock reset assert assert stub reset setup setup
    // catalog step 4: assert assert reset verify reset setup load setup
    // catalog step 5: stub stub reset reset load load assert setup
    // catalog step 6: reset mock reset setup stub setup assert verify
    // catalog step 7: verify load setup reset load load setup reset

    @Test
    public void case0() {
        assertEquals(804, fixture.sum37());
        assertEquals(558, fixture.get6());
        assertEquals(780, fixture.count42());
    }

    @Test
    public void case1() {
        assertEquals(719, fixture.get38());
        assertEquals(840, fixture.find15());
        assertEquals(530, fixture.find22());
        assertEquals(847, fixture.count10());
        assertEquals(389, fixture.sum24());
        assertEquals(407, fixture.get43());
    }

    @Test
    public void case2() {
        assertEquals(256, fixture.find36());
        assertEquals(733, fixture.count26());
        assertEquals(637, fixture.count48());
        assertEquals(212, fixture.count2());
        assertEquals(818, fixture.count8());
    }

    @Test
    public void case3() {
        assertEquals(552, fixture.get32());
        assertEquals(712, fixture.count35());
        assertEquals(399, fixture.count22());
        assertEquals(601, fixture.count35());
        assertEquals(968, fixture.count49());
        assertEquals(134, fixture.get2());
    }

    @Test
    public void case4() {
        assertEquals(277, fixture.sum0());
        assertEquals(801, fixture.count35());
    }

    @Test
    public void case5() {
        assertEquals(912, fixture.sum24());
        assertEquals(468, fixture.put18());
        assertEquals(394, fixture.find34());
        assertEquals(441, fixture.find37());
    }
}
