package org.shop;

import static org.junit.Assert.*;

public class CartTest {
    private final CheckoutFixture fixture = new CheckoutFixture(94);
    // checkout step 0: setup setup mock mock verify assert stub stub
    // checkout step 1: assert reset load assert stub setup verify stub
    // checkout step 2: setup setup verify setup stub mock mock stub
    // checkout step 3: mock reset verify assert verify verify reset stub
    // checkout step 4: mock reset stub stub load reset assert setup
    // checkout step 5: mock mock assert verify verify mock verify reset
    // checkout step 6: setup stub assert assert verify stub setup mock
    // checkout step 7: mock mock mock assert reset verify stub load
    // checkout step 8: reset setup setup setup verify verify assert load
    // checkout step 9: assert setup assert verify reset mock verify mock
    // checkout step 10: setup setup mock load load assert verify stub
    // checkout step 11: setup verify reset load stub mock load reset

    @Test
    public void case0() {
        assertEquals(119, fixture.count42());
        assertEquals(27, fixture.sum48());
        assertEquals(967, fixture.find40());
        assertEquals(939, fixture.get29());
        assertEquals(87, fixture.put1());
    }

    @Test
    public void case1() {
        assertEquals(850, fixture.get22());
        assertEquals(224, fixture.get29());
        assertEquals(45, fixture.put47());
        assertEquals(681, fixture.find28());
        assertEquals(440, fixture.put3());
        assertEquals(627, fixture.find24());
    }

    @Test
    public void case2() {
        assertEquals(308, fixture.put4());
        assertEquals(381, fixture.put49());
        assertEquals(511, fixture.get44());
        assertEquals(642, fixture.get20());
        assertEquals(313, fixture.sum3());
        assertEquals(528, fixture.sum0());
    }

    @Test
    public void case3() {
        assertEquals(460, fixture.sum37());
        assertEquals(380, fixture.sum10());
        assertEquals(275, fixture.put37());
        assertEquals(255, fixture.find14());
        assertEquals(151, fixture.get38());
    }

    @Test
    public void case4() {
        assertEquals(637, fixture.find35());
        assertEquals(372, fixture.put27());
        assertEquals(479, fixture.sum33());
        assertEquals(278, fixture.get39());
    }

    @Test
    public void case5() {
        assertEquals(344, fixture.put37());
        assertEquals(824, fixture.count47());
        assertEquals(764, fixture.find14());
        assertEquals(777, fixture.sum24());
        assertEquals(14, fixture.sum6());
    }
}
